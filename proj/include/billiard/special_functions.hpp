#pragma once

#include <complex>

namespace billiard::special {

inline constexpr double kEulerGamma = 0.57721566490153286061;

double bessel_j0(double x);
double bessel_y0(double x);
// H0^(1)(x) = J0(x) + i Y0(x), x > 0.
std::complex<double> hankel1_0(double x);

double bessel_j(int order, double x);
double bessel_y(int order, double x);
std::complex<double> hankel1(int order, double x);

}  // namespace billiard::special
