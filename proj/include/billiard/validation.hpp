#pragma once

#include <string>
#include <vector>

#include "billiard/helmholtz.hpp"

namespace billiard {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Exact scattered field of a point source outside a Dirichlet circle of
// the given radius centred at the origin (cylindrical-harmonic series).
Complex circle_scattered_exact(WaveNumber k, double radius, Point source, Point observer);

struct CircleConvergence {
  std::vector<double> nodes_per_wavelength;
  std::vector<int> nodes;
  std::vector<double> relative_error;  // max over the probe points
};

// Boundary solver against the series for a circle of radius 5 cm at
// k = 2/cm, source and probes outside.
CircleConvergence circle_convergence(const std::vector<double>& nodes_per_wavelength);

// Built-in oracle suite: circle scattering, monodromy closed form,
// single-echo Fourier identity, wall-only site Green function.
std::vector<CheckResult> run_validation();

}  // namespace billiard
