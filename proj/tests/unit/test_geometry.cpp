#include <doctest.h>

#include <cmath>
#include <random>

#include "billiard/errors.hpp"
#include "billiard/geometry.hpp"

using namespace billiard;

namespace {
ResonatorGeometry reference() { return build_geometry(30.5, 115.0, 32.5, 0.2); }
}  // namespace

TEST_CASE("tips of the reference reflector") {
  auto g = reference();
  auto tips = tip_positions(g);
  // (D - R + R cos 57.5 deg, R sin 57.5 deg) worked by hand.
  CHECK(tips.upper.x == doctest::Approx(18.388).epsilon(1e-4));
  CHECK(tips.upper.y == doctest::Approx(25.723).epsilon(1e-4));
  CHECK(tips.lower == mirror_y(tips.upper));
  CHECK(g.vertex() == Point{32.5, 0.0});
  CHECK(g.arc_center() == Point{2.0, 0.0});
}

TEST_CASE("arc points lie on the circle") {
  auto g = reference();
  for (int i = 0; i <= 50; ++i) {
    double th = -g.half_angle() + g.alpha() * i / 50.0;
    CHECK(std::abs(distance(g.arc_point(th), g.arc_center()) / 30.5 - 1.0) < 1e-12);
    auto n = g.arc_inward_normal(th);
    CHECK(norm(n) == doctest::Approx(1.0));
    CHECK(dot(n, g.arc_center() - g.arc_point(th)) > 0.0);
  }
}

TEST_CASE("invalid geometry names the offending field") {
  auto field_of = [](auto fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string{};
  };
  CHECK(field_of([] { build_geometry(-1.0, 115.0, 32.5, 0.2); }) == "radius_cm");
  CHECK(field_of([] { build_geometry(30.5, 0.0, 32.5, 0.2); }) == "alpha_deg");
  CHECK(field_of([] { build_geometry(30.5, 115.0, 32.5, -0.2); }) == "antenna_offset_cm");
  // Tips behind the wall.
  CHECK_THROWS_AS(build_geometry(30.5, 115.0, 5.0, 0.2), ConfigError);
}

TEST_CASE("stability classes") {
  CHECK(stability_class(build_geometry(30.5, 115.0, 32.5, 0.2)) == StabilityClass::Unstable);
  CHECK(stability_class(build_geometry(30.5, 115.0, 20.0, 0.2)) == StabilityClass::Stable);
  CHECK(stability_class(build_geometry(30.5, 115.0, 30.5, 0.2)) == StabilityClass::Marginal);
  int flips = 0;
  auto prev = stability_class(build_geometry(30.5, 115.0, 20.0, 0.2));
  for (int i = 1; i <= 400; ++i) {
    auto c = stability_class(build_geometry(30.5, 115.0, 20.0 + 20.0 * i / 400.0 + 1e-3, 0.2));
    if (c != prev) ++flips;
    prev = c;
  }
  CHECK(flips == 1);
}

TEST_CASE("ray against arc") {
  auto g = reference();
  auto hit = ray_arc_intersect({0.0, 0.0}, {1.0, 0.0}, g);
  REQUIRE(hit);
  CHECK(hit->hit.x == doctest::Approx(32.5));
  CHECK(hit->theta == doctest::Approx(0.0));
  CHECK(hit->path_length == doctest::Approx(32.5));
  // Straight up the wall never meets the arc's span.
  CHECK_FALSE(ray_arc_intersect({0.0, 0.0}, {0.0, 1.0}, g));
  // Tangent to the full circle at its top: no crossing.
  CHECK_FALSE(ray_circle_intersect({2.0 - 10.0, 30.5}, {1.0, 0.0}, g));
  // Mirror images hit mirror points.
  Vec2 d = normalized({1.0, 0.3});
  auto up = ray_arc_intersect({0.2, 0.0}, d, g);
  auto down = ray_arc_intersect({0.2, 0.0}, mirror_y(d), g);
  REQUIRE(up);
  REQUIRE(down);
  CHECK(up->hit.x == doctest::Approx(down->hit.x).epsilon(1e-14));
  CHECK(up->hit.y == doctest::Approx(-down->hit.y).epsilon(1e-14));
}

TEST_CASE("specular reflection") {
  auto r = reflect({1.0, 0.0}, {-1.0, 0.0});
  CHECK(r.x == doctest::Approx(-1.0));
  CHECK(r.y == doctest::Approx(0.0));
  const double s = std::sqrt(0.5);
  r = reflect({s, s}, {0.0, -1.0});
  CHECK(r.x == doctest::Approx(s));
  CHECK(r.y == doctest::Approx(-s));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int i = 0; i < 200; ++i) {
    double a = ang(rng), b = ang(rng);
    Vec2 d{std::cos(a), std::sin(a)}, n{std::cos(b), std::sin(b)};
    auto once = reflect(d, n), twice = reflect(once, n);
    CHECK(norm(twice - d) < 1e-12);
    CHECK(norm(once) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dot(once, n) == doctest::Approx(-dot(d, n)).epsilon(1e-12));
  }
}
