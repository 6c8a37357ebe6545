#include "billiard/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "billiard/analysis.hpp"
#include "billiard/errors.hpp"

namespace billiard {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::string format(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Entry {
  const char* name;  // section.key
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define BILLIARD_DOUBLE(section, key)                                                   \
  Entry {                                                                              \
    #section "." #key,                                                                 \
        [](RunConfig& c, const std::string& v) { c.section.key = parse_double(#section "." #key, v); }, \
        [](const RunConfig& c) { return format(c.section.key); }                        \
  }
#define BILLIARD_INT(section, key)                                                      \
  Entry {                                                                              \
    #section "." #key,                                                                 \
        [](RunConfig& c, const std::string& v) { c.section.key = parse_int(#section "." #key, v); }, \
        [](const RunConfig& c) { return std::to_string(c.section.key); }                \
  }
#define BILLIARD_STRING(section, key)                                                   \
  Entry {                                                                              \
    #section "." #key, [](RunConfig& c, const std::string& v) { c.section.key = v; },   \
        [](const RunConfig& c) { return c.section.key; }                                \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      BILLIARD_DOUBLE(geometry, radius_cm),
      BILLIARD_DOUBLE(geometry, alpha_deg),
      BILLIARD_DOUBLE(geometry, separation_cm),
      BILLIARD_DOUBLE(geometry, antenna_offset_cm),
      BILLIARD_DOUBLE(geometry, antenna_transverse_cm),
      BILLIARD_DOUBLE(solver, nodes_per_wavelength),
      BILLIARD_DOUBLE(solver, grid_h_cm),
      BILLIARD_DOUBLE(solver, coupling_kappa),
      BILLIARD_DOUBLE(solver, orbit_length_max_cm),
      BILLIARD_STRING(sweep, kind),
      BILLIARD_DOUBLE(sweep, f_min_ghz),
      BILLIARD_DOUBLE(sweep, f_max_ghz),
      BILLIARD_DOUBLE(sweep, d_min_cm),
      BILLIARD_DOUBLE(sweep, d_max_cm),
      BILLIARD_INT(sweep, samples),
      BILLIARD_DOUBLE(sweep, frequency_ghz),
      BILLIARD_STRING(analysis, window),
      BILLIARD_DOUBLE(analysis, sphere_radius_cm),
      BILLIARD_DOUBLE(analysis, prominence),
      BILLIARD_DOUBLE(analysis, reference_prominence),
      BILLIARD_DOUBLE(analysis, max_length_over_radius),
      BILLIARD_STRING(output, directory),
      BILLIARD_STRING(output, formats),
  };
  return table;
}

#undef BILLIARD_DOUBLE
#undef BILLIARD_INT
#undef BILLIARD_STRING

void set_key(RunConfig& config, const std::string& name, const std::string& value) {
  for (const Entry& e : entries()) {
    if (name == e.name) {
      e.set(config, value);
      return;
    }
  }
  std::string valid;
  for (const Entry& e : entries()) valid += std::string(valid.empty() ? "" : ", ") + e.name;
  throw ConfigError(name, "unknown key; valid keys: " + valid);
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Entry& e : entries()) keys.emplace_back(e.name);
  return keys;
}

void RunConfig::validate() const {
  (void)resonator();
  require_positive("solver.nodes_per_wavelength", solver.nodes_per_wavelength);
  require_positive("solver.grid_h_cm", solver.grid_h_cm);
  require_positive("solver.coupling_kappa", solver.coupling_kappa);
  require_positive("solver.orbit_length_max_cm", solver.orbit_length_max_cm);
  if (sweep.kind != "quantum" && sweep.kind != "semiclassical" &&
      sweep.kind != "semiclassical-no-diffraction") {
    throw ConfigError("sweep.kind",
                      "expected quantum, semiclassical or semiclassical-no-diffraction");
  }
  require_positive("sweep.f_min_ghz", sweep.f_min_ghz);
  if (!(sweep.f_max_ghz > sweep.f_min_ghz)) {
    throw ConfigError("sweep.f_max_ghz", "must exceed sweep.f_min_ghz");
  }
  require_positive("sweep.d_min_cm", sweep.d_min_cm);
  if (!(sweep.d_max_cm > sweep.d_min_cm)) {
    throw ConfigError("sweep.d_max_cm", "must exceed sweep.d_min_cm");
  }
  if (sweep.samples < 2) throw ConfigError("sweep.samples", "need at least 2 samples");
  require_positive("sweep.frequency_ghz", sweep.frequency_ghz);
  (void)parse_window(analysis.window);
  require_positive("analysis.sphere_radius_cm", analysis.sphere_radius_cm);
  require_positive("analysis.prominence", analysis.prominence);
  require_positive("analysis.reference_prominence", analysis.reference_prominence);
  require_positive("analysis.max_length_over_radius", analysis.max_length_over_radius);
  if (output.directory.empty()) throw ConfigError("output.directory", "must not be empty");
  std::stringstream formats(output.formats);
  std::string f;
  while (std::getline(formats, f, ',')) {
    if (trim(f) != "csv") throw ConfigError("output.formats", "only csv is supported");
  }
}

ResonatorGeometry RunConfig::resonator() const {
  try {
    return build_geometry(geometry.radius_cm, geometry.alpha_deg, geometry.separation_cm,
                          geometry.antenna_offset_cm, geometry.antenna_transverse_cm);
  } catch (const ConfigError& e) {
    const std::string field = e.field().rfind("geometry.", 0) == 0 ? e.field() : "geometry." + e.field();
    throw ConfigError(field, std::string(e.what()).substr(e.field().size() + 2));
  }
}

std::string RunConfig::render() const {
  std::string out;
  for (const Entry& e : entries()) out += std::string(e.name) + " = " + e.get(*this) + "\n";
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig config;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    line = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    if (section.empty()) throw ConfigError(where, "key outside of a [section]");
    set_key(config, section + "." + trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in, path);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(assignment, "override must look like section.key=value");
  }
  set_key(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace billiard
