#pragma once

#include <complex>

#include "billiard/units.hpp"

namespace billiard {

// Point antenna at distance d_a from the Dirichlet wall, reflector absent:
// regularised self term i/4 plus the wall image, (i/4)(1 - H0(2 k d_a)).
std::complex<double> wall_only_site_green(WaveNumber k, double antenna_offset);

// One-parameter antenna model S11 = (1 + i kappa g) / (1 - i kappa g).
std::complex<double> s11_from_site_green(std::complex<double> site_green, double kappa);

// |T|^2 = 1 - |S11|^2.
double transmission_from_s11(std::complex<double> s11);

}  // namespace billiard
