#include <algorithm>
#include <cmath>
#include <string>

#include "billiard/analysis.hpp"
#include "billiard/antenna.hpp"
#include "billiard/errors.hpp"
#include "billiard/parallel.hpp"

namespace billiard {

const char* to_string(SweepKind kind) {
  return kind == SweepKind::Frequency ? "frequency" : "distance";
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, int samples, const char* field) {
  if (samples < 2) throw ConfigError("samples", "need at least 2 samples");
  if (!(hi > lo)) throw ConfigError(field, "range must be increasing");
  std::vector<double> axis(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    axis[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
  }
  axis.back() = hi;
  return axis;
}

template <class Eval>
void fill(ComplexSpectrum& spec, int workers, Eval&& eval) {
  const std::size_t n = spec.axis.size();
  spec.s11.assign(n, Complex{});
  spec.tsq.assign(n, 0.0);
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      spec.s11[i] = eval(spec.axis[i]);
    } catch (const NumericalError& e) {
      throw NumericalError("sample " + std::to_string(i) + " (" + to_string(spec.kind) +
                           " axis " + std::to_string(spec.axis[i]) + "): " + e.what());
    }
    spec.tsq[i] = transmission_from_s11(spec.s11[i]);
  });
}

ComplexSpectrum frequency_spectrum(const ResonatorGeometry& geom, double f_min_ghz,
                                   double f_max_ghz, int samples, double kappa) {
  if (!(f_min_ghz > 0.0)) throw ConfigError("f_min_ghz", "must be positive");
  if (!(kappa > 0.0)) throw ConfigError("coupling_kappa", "must be positive");
  ComplexSpectrum spec;
  spec.kind = SweepKind::Frequency;
  spec.axis = uniform_grid(WaveNumber::from_ghz(f_min_ghz).value(),
                           WaveNumber::from_ghz(f_max_ghz).value(), samples, "f_max_ghz");
  spec.radius = geom.radius();
  spec.alpha_deg = geom.alpha_deg();
  spec.separation = geom.separation();
  spec.antenna_offset = geom.antenna_offset();
  spec.kappa = kappa;
  return spec;
}

ComplexSpectrum distance_spectrum(const ResonatorGeometry& base, double d_min, double d_max,
                                  int samples, WaveNumber k, double kappa) {
  if (!(d_min > 0.0)) throw ConfigError("d_min_cm", "must be positive");
  if (!(kappa > 0.0)) throw ConfigError("coupling_kappa", "must be positive");
  ComplexSpectrum spec;
  spec.kind = SweepKind::Distance;
  spec.axis = uniform_grid(d_min, d_max, samples, "d_max_cm");
  // Validate every geometry up front so configuration errors are not
  // reported as numerical failures of a sample.
  for (double d : spec.axis) (void)base.with_separation(d);
  spec.radius = base.radius();
  spec.alpha_deg = base.alpha_deg();
  spec.antenna_offset = base.antenna_offset();
  spec.wavenumber = k.value();
  spec.kappa = kappa;
  return spec;
}

Complex semiclassical_s11(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                          const std::vector<ClosedOrbit>& catalog, const SemiclassicalOptions& sc) {
  const ReturnAmplitude amp = semiclassical_return(catalog, k, geom.antenna_offset(), sc);
  return s11_from_site_green(semiclassical_site_green(geom, k, amp), kappa);
}

}  // namespace

ComplexSpectrum sweep_frequency(const ResonatorGeometry& geom, double f_min_ghz, double f_max_ghz,
                                int samples, double kappa, const SweepOptions& opts) {
  ComplexSpectrum spec = frequency_spectrum(geom, f_min_ghz, f_max_ghz, samples, kappa);
  fill(spec, opts.workers,
       [&](double k) { return s11_quantum(geom, WaveNumber(k), kappa, opts.solver); });
  return spec;
}

ComplexSpectrum sweep_distance(const ResonatorGeometry& base, double d_min, double d_max,
                               int samples, WaveNumber k, double kappa, const SweepOptions& opts) {
  ComplexSpectrum spec = distance_spectrum(base, d_min, d_max, samples, k, kappa);
  fill(spec, opts.workers, [&](double d) {
    return s11_quantum(base.with_separation(d), k, kappa, opts.solver);
  });
  return spec;
}

ComplexSpectrum semiclassical_sweep_frequency(const ResonatorGeometry& geom, double f_min_ghz,
                                              double f_max_ghz, int samples, double kappa,
                                              double length_max, const SemiclassicalOptions& sc,
                                              int workers) {
  ComplexSpectrum spec = frequency_spectrum(geom, f_min_ghz, f_max_ghz, samples, kappa);
  spec.model = sc.include_diffraction ? "semiclassical" : "semiclassical-no-diffraction";
  const std::vector<ClosedOrbit> catalog = build_orbit_catalog(geom, length_max);
  fill(spec, workers,
       [&](double k) { return semiclassical_s11(geom, WaveNumber(k), kappa, catalog, sc); });
  return spec;
}

ComplexSpectrum semiclassical_sweep_distance(const ResonatorGeometry& base, double d_min,
                                             double d_max, int samples, WaveNumber k,
                                             double kappa, double length_max,
                                             const SemiclassicalOptions& sc, int workers) {
  ComplexSpectrum spec = distance_spectrum(base, d_min, d_max, samples, k, kappa);
  spec.model = sc.include_diffraction ? "semiclassical" : "semiclassical-no-diffraction";
  fill(spec, workers, [&](double d) {
    const ResonatorGeometry geom = base.with_separation(d);
    return semiclassical_s11(geom, k, kappa, build_orbit_catalog(geom, length_max), sc);
  });
  return spec;
}

DistanceClassification classify_distance_peaks(const ResonatorGeometry& base, double d_min,
                                               double d_max, int samples, WaveNumber k,
                                               double kappa, double length_max,
                                               double prominence, int workers) {
  const double lambda = k.wavelength();
  const double start = std::max(d_min, base.radius() + 0.25 * lambda);
  if (!(d_max > start)) {
    return {PeakClassifier({}, {}, 0.1 * lambda), start, {}, {}};
  }
  const double step = (d_max - d_min) / std::max(samples - 1, 1);
  const int n = std::max(2, static_cast<int>(std::round((d_max - start) / step)) + 1);
  SemiclassicalOptions off;
  off.include_diffraction = false;
  ComplexSpectrum without =
      semiclassical_sweep_distance(base, start, d_max, n, k, kappa, length_max, off, workers);
  ComplexSpectrum with =
      semiclassical_sweep_distance(base, start, d_max, n, k, kappa, length_max, {}, workers);
  PeakClassifier cls = PeakClassifier::from_sweeps(without, with, prominence, 0.1 * lambda);
  return {std::move(cls), start, std::move(without), std::move(with)};
}

}  // namespace billiard
