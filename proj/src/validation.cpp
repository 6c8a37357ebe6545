#include "billiard/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "billiard/analysis.hpp"
#include "billiard/antenna.hpp"
#include "billiard/raytrace.hpp"
#include "billiard/special_functions.hpp"

namespace billiard {

Complex circle_scattered_exact(WaveNumber k, double radius, Point source, Point observer) {
  const double ka = k.value() * radius;
  const double r0 = norm(source), r = norm(observer);
  const double dphi = std::atan2(observer.y, observer.x) - std::atan2(source.y, source.x);
  const int orders = static_cast<int>(k.value() * std::max(r0, r)) + 40;
  Complex sum = 0.0;
  for (int m = 0; m <= orders; ++m) {
    const Complex term = special::bessel_j(m, ka) / special::hankel1(m, ka) *
                         special::hankel1(m, k.value() * r0) * special::hankel1(m, k.value() * r);
    sum += (m == 0 ? 1.0 : 2.0 * std::cos(m * dphi)) * term;
  }
  return Complex(0.0, -0.25) * sum;
}

CircleConvergence circle_convergence(const std::vector<double>& nodes_per_wavelength) {
  const WaveNumber k(2.0);
  const double radius = 5.0;
  const Point source{9.0, 1.0};
  const std::vector<Point> probes{{-7.0, 3.0}, {0.0, -8.0}, {12.0, 0.5}, {6.0, 6.0}};
  const BoundaryCurve curve = BoundaryCurve::circle({0.0, 0.0}, radius);
  CircleConvergence out;
  for (double ppw : nodes_per_wavelength) {
    SolverOptions opts;
    opts.nodes_per_wavelength = ppw;
    opts.min_nodes = 4;
    const int n = node_count(curve.length(), k, opts);
    const ScatteringSolution sol = solve_boundary(curve, GreenKind::FreeSpace, k, source, n, opts);
    double err = 0.0;
    for (Point p : probes) {
      const Complex exact = circle_scattered_exact(k, radius, source, p);
      err = std::max(err, std::abs(sol.scattered(p).value - exact) / std::abs(exact));
    }
    out.nodes_per_wavelength.push_back(ppw);
    out.nodes.push_back(sol.discretization().size());
    out.relative_error.push_back(err);
  }
  return out;
}

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CheckResult circle_check() {
  const CircleConvergence c = circle_convergence({2.0, 4.0, 20.0});
  bool halves = true;
  for (std::size_t i = 1; i < 2; ++i) halves = halves && c.relative_error[i] <= 0.5 * c.relative_error[i - 1];
  const double err20 = c.relative_error.back();
  return {"circle scattering vs harmonic series", halves && err20 < 1e-3,
          fmt("error %.2e at 20 nodes/wavelength, %.2e -> ", err20, c.relative_error[0]) +
              fmt("%.2e from 2 to 4 nodes/wavelength", c.relative_error[1])};
}

CheckResult monodromy_check() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = 15.0 + 50.0 * i / 99.0;
    const ResonatorGeometry g = build_geometry(30.5, 115.0, d, 0.2);
    worst = std::max(worst, std::abs(horizontal_monodromy(g).trace - (2.0 - 4.0 * d / 30.5)));
  }
  return {"monodromy trace closed form", worst < 1e-12, fmt("max deviation %.2e", worst)};
}

CheckResult fourier_check() {
  const double radius = 30.5, echo = 65.0;
  std::vector<double> k;
  std::vector<Complex> s;
  for (int i = 0; i < 1001; ++i) {
    k.push_back(0.6 + 4.0 * i / 1000.0);
    s.push_back(std::polar(1.0, k.back() * echo));
  }
  const ReturnSpectrum r = return_spectrum(k, s, radius);
  const auto best = std::max_element(r.magnitude.begin(), r.magnitude.end()) - r.magnitude.begin();
  const double found = r.length_over_radius[static_cast<std::size_t>(best)];
  return {"single echo Fourier identity", std::abs(found - echo / radius) <= r.resolution,
          fmt("peak at L/R %.4f, expected %.4f", found, echo / radius)};
}

CheckResult site_green_check() {
  // J0 by its power series, independent of the library Bessel routines.
  const WaveNumber k = WaveNumber::from_ghz(5.63);
  const double x = 2.0 * k.value() * 0.2;
  double term = 1.0, j0 = 1.0;
  for (int m = 1; m < 30; ++m) {
    term *= -(x * x / 4.0) / (m * m);
    j0 += term;
  }
  const double expected = (1.0 - j0) / 4.0;
  const double got = wall_only_site_green(k, 0.2).imag();
  return {"wall-only site Green function", std::abs(got - expected) < 1e-12,
          fmt("Im g = %.6f, series %.6f", got, expected)};
}

}  // namespace

std::vector<CheckResult> run_validation() {
  return {circle_check(), monodromy_check(), fourier_check(), site_green_check()};
}

}  // namespace billiard
