#include <doctest.h>

#include <cmath>
#include <complex>

#include "billiard/antenna.hpp"
#include "billiard/errors.hpp"
#include "billiard/gtd.hpp"

using namespace billiard;
using C = std::complex<double>;

namespace {
ResonatorGeometry reference() { return build_geometry(30.5, 115.0, 32.5, 0.2); }
}  // namespace

TEST_CASE("knife-edge coefficient") {
  WaveNumber k(1.18);
  double a = 0.7, b = 2.9;
  auto d = knife_edge_coefficient(k, a, b);
  C expect = -std::polar(1.0, kPi / 4) / (2.0 * std::sqrt(2.0 * kPi * 1.18)) *
             (1.0 / std::cos((b - a) / 2) - 1.0 / std::cos((b + a) / 2));
  CHECK(std::abs(d.value - expect) < 1e-14);
  CHECK_FALSE(d.clamped);
  CHECK(std::abs(knife_edge_coefficient(k, b, a).value - d.value) < 1e-15);
  CHECK(std::abs(knife_edge_coefficient(k, a, 0.0).value) < 1e-15);
  auto quad = knife_edge_coefficient(WaveNumber(4 * 1.18), a, b);
  CHECK(std::abs(quad.value / d.value - 0.5) < 1e-14);
  // Shadow boundary: out - in = pi.
  CHECK(knife_edge_coefficient(k, 0.5, 0.5 + kPi).clamped);
}

TEST_CASE("repetitions of the unstable orbit decay with the Lyapunov exponent") {
  auto g = reference();
  auto k = WaveNumber::from_ghz(5.63);
  double lam = horizontal_monodromy(g).lyapunov;
  double a1 = std::abs(orbit_contribution(horizontal_orbit(g, 1), k, 0.2).value);
  for (int n = 2; n <= 6; ++n) {
    double an = std::abs(orbit_contribution(horizontal_orbit(g, n), k, 0.2).value);
    // |m12| of the n-fold product grows like sinh(n lam) / sinh(lam).
    CHECK(an / a1 == doctest::Approx(std::sqrt(std::sinh(lam) / std::sinh(n * lam)))
                         .epsilon(1e-9));
  }
  double a5 = std::abs(orbit_contribution(horizontal_orbit(g, 5), k, 0.2).value);
  double a6 = std::abs(orbit_contribution(horizontal_orbit(g, 6), k, 0.2).value);
  CHECK(a6 / a5 == doctest::Approx(std::exp(-lam / 2)).epsilon(1e-3));
}

TEST_CASE("orbit sum is the coherent sum of its terms") {
  auto g = reference();
  auto k = WaveNumber::from_ghz(5.63);
  auto cat = build_orbit_catalog(g, 400.0);
  auto amp = semiclassical_return(cat, k, 0.2);
  C sum = 0.0, geometric = 0.0;
  for (const auto& o : cat) {
    C t = orbit_contribution(o, k, 0.2).value;
    sum += t;
    if (o.kind == OrbitKind::Geometric) geometric += t;
  }
  CHECK(std::abs(amp.total - sum) < 1e-13);
  REQUIRE(amp.breakdown.size() == cat.size());
  C from_breakdown = 0.0;
  for (const auto& [id, v] : amp.breakdown) from_breakdown += v;
  CHECK(std::abs(from_breakdown - sum) < 1e-13);

  SemiclassicalOptions off;
  off.include_diffraction = false;
  CHECK(std::abs(semiclassical_return(cat, k, 0.2, off).total - geometric) < 1e-13);

  // Geometry overload builds the same catalog.
  CHECK(std::abs(semiclassical_return(g, k, 400.0).total - amp.total) < 1e-13);
  CHECK(semiclassical_site_green(g, k, amp) == wall_only_site_green(k, 0.2) + amp.total);
}

TEST_CASE("degenerate inputs") {
  auto k = WaveNumber::from_ghz(5.63);
  auto empty = semiclassical_return(std::vector<ClosedOrbit>{}, k, 0.2);
  CHECK(empty.total == C{});
  CHECK_FALSE(empty.warnings.empty());
  ClosedOrbit bad;
  CHECK_THROWS_AS(orbit_contribution(bad, k, 0.2), ConfigError);
  // Without the reflector the transmission stays small.
  double t = transmission_from_s11(s11_from_site_green(
      semiclassical_site_green(reference(), k, empty), 1.0));
  CHECK(t < 0.1);
}
