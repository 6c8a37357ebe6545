#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <utility>

#include "billiard/analysis.hpp"
#include "billiard/config.hpp"
#include "billiard/errors.hpp"
#include "billiard/gtd.hpp"
#include "billiard/io.hpp"
#include "billiard/raytrace.hpp"
#include "billiard/validation.hpp"

namespace fs = std::filesystem;
using namespace billiard;

namespace {

struct Context {
  RunConfig config;
  std::string command;
  int workers = 1;

  fs::path out(const std::string& name) const { return fs::path(config.output.directory) / name; }
  std::string header() const { return "billiard " + command + "\n" + config.render(); }
  void write(const std::string& name, const std::string& body,
             const std::string& extra_header = "") const {
    write_artifact(out(name), header() + extra_header, body);
    std::cout << "wrote " << out(name).string() << '\n';
  }
  SweepOptions sweep_options() const {
    SweepOptions o;
    o.solver.nodes_per_wavelength = config.solver.nodes_per_wavelength;
    o.workers = workers;
    return o;
  }
  SemiclassicalOptions semiclassical() const {
    SemiclassicalOptions o;
    o.include_diffraction = config.sweep.kind != "semiclassical-no-diffraction";
    return o;
  }
};

void print_warnings(const ComplexSpectrum& s) {
  int negative = 0;
  for (double t : s.tsq) negative += t < 0.0;
  if (negative) {
    std::cerr << "warning: " << negative
              << " sample(s) with negative |T|^2; the orbit sum is outside its validity there\n";
  }
}

void sweep_freq(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const ResonatorGeometry geom = c.resonator();
  if (c.sweep.kind == "quantum") {
    const ComplexSpectrum s = sweep_frequency(geom, c.sweep.f_min_ghz, c.sweep.f_max_ghz,
                                              c.sweep.samples, c.solver.coupling_kappa,
                                              ctx.sweep_options());
    ctx.write("spectrum_frequency.csv", spectrum_csv(s));
    ctx.write("peaks_frequency.csv", peaks_csv(fit_peaks(s, c.analysis.prominence)));
    return;
  }
  const ComplexSpectrum s = semiclassical_sweep_frequency(
      geom, c.sweep.f_min_ghz, c.sweep.f_max_ghz, c.sweep.samples, c.solver.coupling_kappa,
      c.solver.orbit_length_max_cm, ctx.semiclassical(), ctx.workers);
  print_warnings(s);
  ctx.write("semiclassical_frequency.csv", semiclassical_csv(s));
  ctx.write("peaks_frequency.csv", peaks_csv(fit_peaks(s, c.analysis.prominence)));
}

void sweep_dist(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const ResonatorGeometry base = c.resonator();
  const WaveNumber k = WaveNumber::from_ghz(c.sweep.frequency_ghz);
  if (c.sweep.kind != "quantum") {
    const ComplexSpectrum s = semiclassical_sweep_distance(
        base, c.sweep.d_min_cm, c.sweep.d_max_cm, c.sweep.samples, k, c.solver.coupling_kappa,
        c.solver.orbit_length_max_cm, ctx.semiclassical(), ctx.workers);
    print_warnings(s);
    ctx.write("semiclassical_distance.csv", semiclassical_csv(s));
    ctx.write("peaks_distance.csv", peaks_csv(fit_peaks(s, c.analysis.prominence)));
    return;
  }
  const ComplexSpectrum s = sweep_distance(base, c.sweep.d_min_cm, c.sweep.d_max_cm,
                                           c.sweep.samples, k, c.solver.coupling_kappa,
                                           ctx.sweep_options());
  ctx.write("spectrum_distance.csv", spectrum_csv(s));
  std::vector<Peak> peaks = fit_peaks(s, c.analysis.prominence);
  const DistanceClassification cls = classify_distance_peaks(
      base, c.sweep.d_min_cm, c.sweep.d_max_cm, c.sweep.samples, k, c.solver.coupling_kappa,
      c.solver.orbit_length_max_cm, c.analysis.reference_prominence, ctx.workers);
  cls.classifier.apply(peaks);
  ctx.write("peaks_distance.csv", peaks_csv(peaks),
            "peaks below D = " + format_number(cls.d_start) + " cm are not classified\n");
}

FieldMap solve_field(const Context& ctx, const ResonatorGeometry& geom) {
  SolverOptions opts;
  opts.nodes_per_wavelength = ctx.config.solver.nodes_per_wavelength;
  const ScatteringSolution sol =
      solve_arc_density(geom, WaveNumber::from_ghz(ctx.config.sweep.frequency_ghz), 0, opts);
  return field_grid(default_region(geom), ctx.config.solver.grid_h_cm, sol);
}

void wavefunction(const Context& ctx) {
  const ResonatorGeometry geom = ctx.config.resonator();
  const FieldMap f = solve_field(ctx, geom);
  const std::string grid = grid_header(f.x0, f.y0, f.h, f.nx, f.ny);
  for (FieldQuantity q :
       {FieldQuantity::RePsi, FieldQuantity::ImPsi, FieldQuantity::E2, FieldQuantity::H2}) {
    ctx.write(std::string(to_string(q)) + ".txt", field_matrix(f, q), grid);
  }
  const ModeLabel label = label_mode(f, geom);
  ctx.write("mode_label.csv", "n,m,ambiguous\n" + std::to_string(label.n) + "," +
                                  std::to_string(label.m) + "," + (label.ambiguous ? "1" : "0") +
                                  "\n");
}

void shift_map(const Context& ctx) {
  const ResonatorGeometry geom = ctx.config.resonator();
  const FieldMap f = solve_field(ctx, geom);
  const ShiftMap m = slater_shift_map(f, ctx.config.analysis.sphere_radius_cm);
  const std::string grid = grid_header(m.x0, m.y0, m.h, m.nx, m.ny);
  ctx.write("shift.txt", shift_matrix(m), grid);
  ctx.write("shift_contour_mask.txt", contour_matrix(m),
            grid + "1 where the shift is below 20% of the most negative shift\n");
}

void return_spectrum_cmd(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const ResonatorGeometry geom = c.resonator();
  const ComplexSpectrum s =
      c.sweep.kind == "quantum"
          ? sweep_frequency(geom, c.sweep.f_min_ghz, c.sweep.f_max_ghz, c.sweep.samples,
                            c.solver.coupling_kappa, ctx.sweep_options())
          : semiclassical_sweep_frequency(geom, c.sweep.f_min_ghz, c.sweep.f_max_ghz,
                                          c.sweep.samples, c.solver.coupling_kappa,
                                          c.solver.orbit_length_max_cm, ctx.semiclassical(),
                                          ctx.workers);
  ReturnSpectrumOptions opts;
  opts.window = parse_window(c.analysis.window);
  opts.max_length_over_radius = c.analysis.max_length_over_radius;
  const ReturnSpectrum r = return_spectrum(s, opts);
  if (!r.resolution_ok) {
    std::cerr << "warning: length resolution " << r.resolution
              << " R exceeds 0.05 R; widen the frequency band to separate companions\n";
  }
  ctx.write("return_spectrum.csv", return_spectrum_csv(r),
            "resolution_L_over_R = " + format_number(r.resolution) + "\nwindow = " +
                to_string(r.window) + "\n");
  const double lmax = c.analysis.max_length_over_radius * geom.radius();
  if (geom.antenna_transverse() == 0.0) {
    ctx.write("orbit_bars.csv", orbit_catalog_csv(build_orbit_catalog(geom, lmax), geom.radius()));
  }
}

void orbits(const Context& ctx) {
  const ResonatorGeometry geom = ctx.config.resonator();
  const auto catalog = build_orbit_catalog(geom, ctx.config.solver.orbit_length_max_cm);
  ctx.write("orbits.csv", orbit_catalog_csv(catalog, geom.radius()));
  const StabilityResult st = horizontal_monodromy(geom);
  std::cout << "stability: " << to_string(stability_class(geom)) << ", trace " << st.trace
            << ", lyapunov per round trip " << st.lyapunov << '\n';
}

int validate() {
  bool ok = true;
  for (const CheckResult& r : run_validation()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open wall-plus-arc resonator: rays, orbit sums, full-wave solver, analysis"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int workers = 1;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--set", overrides, "override, section.key=value (repeatable)");
  app.add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory");
  const std::vector<std::pair<std::string, std::string>> commands{
      {"sweep-freq", "S11 and |T|^2 over frequency at fixed D, with fitted peaks"},
      {"sweep-dist", "S11 and |T|^2 over D at fixed frequency, peaks classified f/d"},
      {"wavefunction", "field map at one (D, f) and its (n, m) label"},
      {"return-spectrum", "length spectrum of S11(k) plus orbit-length bars"},
      {"orbits", "closed-orbit catalog and stability of the axial orbit"},
      {"shift-map", "bead-perturbation shift map and its negative contour mask"},
      {"validate", "built-in oracle checks"},
  };
  app.fallthrough();
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Context ctx;
    ctx.command = app.get_subcommands().front()->get_name();
    if (ctx.command == "validate") return validate();
    if (!config_path.empty()) ctx.config = load_config(config_path);
    for (const auto& o : overrides) apply_override(ctx.config, o);
    if (!out_dir.empty()) ctx.config.output.directory = out_dir;
    ctx.config.validate();
    ctx.workers = workers;
    if (ctx.command == "sweep-freq") sweep_freq(ctx);
    else if (ctx.command == "sweep-dist") sweep_dist(ctx);
    else if (ctx.command == "wavefunction") wavefunction(ctx);
    else if (ctx.command == "return-spectrum") return_spectrum_cmd(ctx);
    else if (ctx.command == "orbits") orbits(ctx);
    else if (ctx.command == "shift-map") shift_map(ctx);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
