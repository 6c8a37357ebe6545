#pragma once

#include <istream>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"

namespace billiard {

struct GeometryConfig {
  double radius_cm = 30.5;
  double alpha_deg = 115.0;
  double separation_cm = 32.5;
  double antenna_offset_cm = 0.2;
  double antenna_transverse_cm = 0.0;
};

struct SolverConfig {
  double nodes_per_wavelength = 16.0;
  double grid_h_cm = 0.5;
  double coupling_kappa = 1.0;
  double orbit_length_max_cm = 700.0;
};

struct SweepConfig {
  std::string kind = "quantum";  // quantum | semiclassical | semiclassical-no-diffraction
  double f_min_ghz = 3.0;
  double f_max_ghz = 9.0;
  double d_min_cm = 22.5;
  double d_max_cm = 42.5;
  int samples = 2001;
  double frequency_ghz = 5.63;
};

struct AnalysisConfig {
  std::string window = "hann";
  double sphere_radius_cm = 0.3;
  double prominence = 0.01;
  // Semiclassical reference sweeps used for f/d classification.
  double reference_prominence = 0.002;
  double max_length_over_radius = 10.0;
};

struct OutputConfig {
  std::string directory = "out";
  std::string formats = "csv";
};

struct RunConfig {
  GeometryConfig geometry;
  SolverConfig solver;
  SweepConfig sweep;
  AnalysisConfig analysis;
  OutputConfig output;

  // Checks every field, including the geometry as a whole.
  void validate() const;
  ResonatorGeometry resonator() const;
  // Every key with its resolved value, one "section.key = value" per line.
  std::string render() const;
};

// All keys as "section.key".
std::vector<std::string> config_keys();

// Flat "[section]" / "key = value" text; '#' and ';' start comments.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// Sets one key from "section.key=value".
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace billiard
