#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace billiard {

// Coordinate frame: the wall is the line x = 0, the symmetry axis is y = 0,
// all lengths in cm.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

using Point = Vec2;

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Vec2 normalized(Vec2 v) { return v * (1.0 / norm(v)); }
constexpr Point mirror_y(Point p) { return {p.x, -p.y}; }
constexpr Point mirror_x(Point p) { return {-p.x, p.y}; }

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

enum class Tip { Upper, Lower };

// Wall plus circular-arc reflector. The arc point at parameter theta is
// (D - R + R cos theta, R sin theta) for theta in [-alpha/2, alpha/2].
class ResonatorGeometry {
 public:
  double radius() const { return radius_; }
  double alpha_deg() const { return alpha_deg_; }
  double alpha() const { return deg_to_rad(alpha_deg_); }
  double half_angle() const { return 0.5 * alpha(); }
  double separation() const { return separation_; }
  double antenna_offset() const { return antenna_offset_; }
  double antenna_transverse() const { return antenna_transverse_; }

  Point arc_center() const { return {separation_ - radius_, 0.0}; }
  Point vertex() const { return {separation_, 0.0}; }
  Point antenna() const { return {antenna_offset_, antenna_transverse_}; }
  // Foot of the antenna on the wall; phase centre of the antenna plus its
  // wall image.
  Point antenna_foot() const { return {0.0, antenna_transverse_}; }

  Point arc_point(double theta) const;
  // Unit normal at the arc point, pointing toward the centre of curvature
  // (into the resonator).
  Vec2 arc_inward_normal(double theta) const;
  double arc_length() const { return radius_ * alpha(); }
  Point tip(Tip which) const;

  ResonatorGeometry with_separation(double separation) const;
  ResonatorGeometry with_alpha_deg(double alpha_deg) const;

  friend ResonatorGeometry build_geometry(double, double, double, double, double);

 private:
  ResonatorGeometry() = default;

  double radius_ = 0.0;
  double alpha_deg_ = 0.0;
  double separation_ = 0.0;
  double antenna_offset_ = 0.0;
  double antenna_transverse_ = 0.0;
};

// Validates ranges and throws ConfigError naming the field on failure.
ResonatorGeometry build_geometry(double radius_cm, double alpha_deg, double separation_cm,
                                 double antenna_offset_cm, double antenna_transverse_cm = 0.0);

struct TipPair {
  Point upper;
  Point lower;
};

TipPair tip_positions(const ResonatorGeometry& geom);

enum class StabilityClass { Stable, Marginal, Unstable };

inline constexpr double kDefaultMarginalTolerance = 1e-9;

StabilityClass stability_class(const ResonatorGeometry& geom,
                               double tol = kDefaultMarginalTolerance);

const char* to_string(StabilityClass c);

struct ArcHit {
  Point hit;
  double theta = 0.0;
  double path_length = 0.0;
};

// Nearest forward intersection of the ray with the arc. Tangent (grazing)
// rays and rays missing the angular span return nullopt. `min_distance`
// excludes the surface the ray is leaving.
std::optional<ArcHit> ray_arc_intersect(Point origin, Vec2 direction, const ResonatorGeometry& geom,
                                        double min_distance = 0.0);

// Same, but against the full circle through the arc (no angular span test).
std::optional<ArcHit> ray_circle_intersect(Point origin, Vec2 direction,
                                           const ResonatorGeometry& geom,
                                           double min_distance = 0.0);

// Specular reflection d - 2 (d.n) n.
Vec2 reflect(Vec2 direction, Vec2 normal);

}  // namespace billiard
