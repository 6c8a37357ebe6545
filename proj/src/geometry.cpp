#include "billiard/geometry.hpp"

#include <array>
#include <cmath>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

ResonatorGeometry build_geometry(double radius_cm, double alpha_deg, double separation_cm,
                                 double antenna_offset_cm, double antenna_transverse_cm) {
  require(std::isfinite(radius_cm) && radius_cm > 0.0, "radius_cm", "must be positive");
  require(std::isfinite(alpha_deg) && alpha_deg > 0.0 && alpha_deg < 180.0, "alpha_deg",
          "must lie strictly between 0 and 180 degrees");
  require(std::isfinite(separation_cm) && separation_cm > 0.0, "separation_cm",
          "must be positive");
  require(std::isfinite(antenna_offset_cm) && antenna_offset_cm > 0.0, "antenna_offset_cm",
          "must be positive");
  require(antenna_offset_cm < 0.1 * separation_cm, "antenna_offset_cm",
          "must be much smaller than separation_cm (at most 10%)");
  require(std::isfinite(antenna_transverse_cm), "antenna_transverse_cm", "must be finite");

  ResonatorGeometry g;
  g.radius_ = radius_cm;
  g.alpha_deg_ = alpha_deg;
  g.separation_ = separation_cm;
  g.antenna_offset_ = antenna_offset_cm;
  g.antenna_transverse_ = antenna_transverse_cm;

  const double tip_x = g.tip(Tip::Upper).x;
  require(tip_x > antenna_offset_cm, "separation_cm",
          "reflector tips would touch or cross the wall");
  require(std::abs(antenna_transverse_cm) < g.tip(Tip::Upper).y, "antenna_transverse_cm",
          "antenna must sit within the reflector's transverse extent");
  return g;
}

Point ResonatorGeometry::arc_point(double theta) const {
  return {separation_ - radius_ + radius_ * std::cos(theta), radius_ * std::sin(theta)};
}

Vec2 ResonatorGeometry::arc_inward_normal(double theta) const {
  return {-std::cos(theta), -std::sin(theta)};
}

Point ResonatorGeometry::tip(Tip which) const {
  const double h = half_angle();
  return arc_point(which == Tip::Upper ? h : -h);
}

ResonatorGeometry ResonatorGeometry::with_separation(double separation) const {
  return build_geometry(radius_, alpha_deg_, separation, antenna_offset_, antenna_transverse_);
}

ResonatorGeometry ResonatorGeometry::with_alpha_deg(double alpha_deg) const {
  return build_geometry(radius_, alpha_deg, separation_, antenna_offset_, antenna_transverse_);
}

TipPair tip_positions(const ResonatorGeometry& geom) {
  return {geom.tip(Tip::Upper), geom.tip(Tip::Lower)};
}

StabilityClass stability_class(const ResonatorGeometry& geom, double tol) {
  const double d = geom.separation();
  const double r = geom.radius();
  if (d < r * (1.0 - tol)) return StabilityClass::Stable;
  if (d > r * (1.0 + tol)) return StabilityClass::Unstable;
  return StabilityClass::Marginal;
}

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Stable: return "stable";
    case StabilityClass::Marginal: return "marginal";
    case StabilityClass::Unstable: return "unstable";
  }
  return "?";
}

namespace {

// Forward roots of |origin + t d - c| = R in ascending order. Grazing rays
// (discriminant within tolerance of zero) have no roots.
std::array<double, 2> circle_roots(Point origin, Vec2 d, const ResonatorGeometry& geom,
                                   bool& ok) {
  const Vec2 q = origin - geom.arc_center();
  const double r = geom.radius();
  const double b = dot(q, d);
  const double c = dot(q, q) - r * r;
  const double disc = b * b - c;
  ok = disc > 1e-12 * r * r;
  if (!ok) return {0.0, 0.0};
  const double s = std::sqrt(disc);
  // Avoid cancellation in the smaller-magnitude root.
  const double t_far = (b <= 0.0) ? (-b + s) : (-b - s);
  const double t_near = (t_far != 0.0) ? c / t_far : 0.0;
  double t1 = std::min(t_far, t_near);
  double t2 = std::max(t_far, t_near);
  return {t1, t2};
}

ArcHit make_hit(Point origin, Vec2 d, double t, const ResonatorGeometry& geom) {
  const Point h = origin + d * t;
  const Point c = geom.arc_center();
  return {h, std::atan2(h.y - c.y, h.x - c.x), t};
}

}  // namespace

std::optional<ArcHit> ray_circle_intersect(Point origin, Vec2 direction,
                                           const ResonatorGeometry& geom, double min_distance) {
  bool ok = false;
  const auto roots = circle_roots(origin, direction, geom, ok);
  if (!ok) return std::nullopt;
  for (double t : roots) {
    if (t > min_distance) return make_hit(origin, direction, t, geom);
  }
  return std::nullopt;
}

std::optional<ArcHit> ray_arc_intersect(Point origin, Vec2 direction, const ResonatorGeometry& geom,
                                        double min_distance) {
  bool ok = false;
  const auto roots = circle_roots(origin, direction, geom, ok);
  if (!ok) return std::nullopt;
  const double h = geom.half_angle();
  for (double t : roots) {
    if (t <= min_distance) continue;
    ArcHit hit = make_hit(origin, direction, t, geom);
    if (std::abs(hit.theta) <= h) return hit;
  }
  return std::nullopt;
}

Vec2 reflect(Vec2 direction, Vec2 normal) {
  return direction - normal * (2.0 * dot(direction, normal));
}

}  // namespace billiard
