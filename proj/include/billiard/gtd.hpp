#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/raytrace.hpp"
#include "billiard/units.hpp"

namespace billiard {

// Largest |sec| admitted near the optical boundaries of the edge.
inline constexpr double kSecantClamp = 1e3;

struct EdgeCoefficient {
  std::complex<double> value;
  bool clamped = false;
};

// Keller's coefficient for a Dirichlet half-plane; angles in the edge frame
// of edge_angle(). Symmetric in its arguments.
EdgeCoefficient knife_edge_coefficient(WaveNumber k, double angle_in, double angle_out);

struct OrbitTerm {
  std::complex<double> value;
  bool clamped = false;      // an edge coefficient hit the secant clamp
  bool regularized = false;  // a focus sat on the antenna, |m12| < epsilon
};

struct SemiclassicalOptions {
  bool include_diffraction = true;
  // Floor for |m12| (cm) when a focus lands on the antenna.
  double focus_epsilon = 1e-6;
};

// Contribution of one closed orbit to the return amplitude at the antenna,
// times its multiplicity.
OrbitTerm orbit_contribution(const ClosedOrbit& orbit, WaveNumber k, double antenna_offset,
                             const SemiclassicalOptions& opts = {});

struct ReturnAmplitude {
  std::complex<double> total;
  std::vector<std::pair<int, std::complex<double>>> breakdown;  // (orbit id, term)
  int clamped = 0;
  int regularized = 0;
  std::vector<std::string> warnings;
};

ReturnAmplitude semiclassical_return(const std::vector<ClosedOrbit>& catalog, WaveNumber k,
                                     double antenna_offset,
                                     const SemiclassicalOptions& opts = {});

ReturnAmplitude semiclassical_return(const ResonatorGeometry& geom, WaveNumber k,
                                     double length_max, const SemiclassicalOptions& opts = {});

// Site Green function of the wall-only problem plus the orbit sum.
std::complex<double> semiclassical_site_green(const ResonatorGeometry& geom, WaveNumber k,
                                              const ReturnAmplitude& amplitude);

// |T|^2 through the same antenna model as the wave solver.
double semiclassical_transmission(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                                  double length_max, const SemiclassicalOptions& opts = {});

double semiclassical_transmission(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                                  const std::vector<ClosedOrbit>& catalog,
                                  const SemiclassicalOptions& opts = {});

}  // namespace billiard
