#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"

namespace billiard {

struct Trajectory {
  std::vector<Point> vertices;
  double total_length = 0.0;
  int bounce_count = 0;
  bool escaped = false;
};

// Specular bounces off wall and arc until the ray can no longer hit either
// (escaped) or max_bounces is exhausted (escaped == false).
Trajectory trace(Point start, Vec2 direction, const ResonatorGeometry& geom, int max_bounces);

// Linearised map of transverse (offset, angle) deviations, in unfolded
// coordinates.
struct TransferMatrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static TransferMatrix free_flight(double length) { return {1.0, length, 0.0, 1.0}; }
  // Thin focusing element of the given power (1/focal length).
  static TransferMatrix lens(double power) { return {1.0, 0.0, -power, 1.0}; }

  // (*this) applied after `rhs`.
  TransferMatrix operator*(const TransferMatrix& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d, c * rhs.a + d * rhs.c,
            c * rhs.b + d * rhs.d};
  }
  double determinant() const { return a * d - b * c; }
  double trace() const { return a + d; }
};

// Reflection off the arc at incidence angle chi (from the normal) focuses
// with power 2 / (R cos chi).
TransferMatrix arc_reflection(const ResonatorGeometry& geom, double cos_incidence);

struct StabilityResult {
  double trace = 0.0;
  double lyapunov = 0.0;  // per round trip
  bool stable = false;
};

// Round trip wall -> vertex -> wall along the symmetry axis.
StabilityResult horizontal_monodromy(const ResonatorGeometry& geom);

enum class VertexKind { Source, Wall, Arc, Tip, Antenna };

struct PathVertex {
  Point position;
  VertexKind kind = VertexKind::Source;
};

// A ray path launched from a point source (the antenna foot or a tip). The
// transfer matrix runs from the first vertex to the last; conjugate points
// are the sign changes of its off-diagonal element m12 along the path.
struct RayPath {
  std::vector<PathVertex> vertices;
  double length = 0.0;
  TransferMatrix transfer;
  int reflections = 0;
  int conjugate_points = 0;
  int degenerate_samples = 0;  // exact m12 zeros resolved by perturbation

  Vec2 launch_direction() const;
  Vec2 arrival_direction() const;
  int specular_bounces() const { return reflections; }
};

inline constexpr int kConjugateSamplesPerLeg = 1000;

// Builds length, transfer matrix, reflection count and conjugate points
// from the vertex list.
RayPath make_ray_path(std::vector<PathVertex> vertices, const ResonatorGeometry& geom);

RayPath reversed(const RayPath& path, const ResonatorGeometry& geom);
RayPath mirrored(const RayPath& path, const ResonatorGeometry& geom);

// pi/2 units: 2 per Dirichlet reflection plus 1 per conjugate point.
int maslov_count(const RayPath& path);

struct ShootDiagnostics {
  int brackets = 0;
  int nonconverged = 0;
};

// Paths antenna foot -> n_specular specular bounces -> tip, all roots found
// by a bracketing scan over the launch angle, sorted by length.
std::vector<RayPath> shoot_to_tip_all(const ResonatorGeometry& geom, int n_specular, Tip which,
                                      ShootDiagnostics* diagnostics = nullptr);

// Shortest such path, if any.
std::optional<RayPath> shoot_to_tip(const ResonatorGeometry& geom, int n_specular,
                                    Tip which = Tip::Upper,
                                    ShootDiagnostics* diagnostics = nullptr);

enum class OrbitKind { Geometric, Diffractive };

const char* to_string(OrbitKind kind);

struct DiffractionEvent {
  Point tip;
  Tip which = Tip::Upper;
  double angle_in = 0.0;   // direction back toward the incoming ray, edge frame
  double angle_out = 0.0;  // outgoing direction, edge frame
};

// Closed path from the antenna back to the antenna. Diffractive orbits are
// split into branches at the tip; each branch starts from a point source.
struct ClosedOrbit {
  int id = 0;
  OrbitKind kind = OrbitKind::Geometric;
  std::vector<RayPath> branches;
  double length = 0.0;
  int repetitions = 1;
  int maslov_count = 0;
  std::vector<DiffractionEvent> diffraction_events;
  int multiplicity = 1;

  std::vector<Point> polyline() const;
};

// Angle of `direction` (pointing away from the tip) measured in the edge
// frame: 0 along the screen face on the resonator side, increasing toward
// the inward normal, in [0, 2 pi).
double edge_angle(const ResonatorGeometry& geom, Tip which, Vec2 direction);

// Maslov count of a closed orbit: all branches plus the antenna's wall
// image (one Dirichlet reflection).
int maslov_count(const ClosedOrbit& orbit);

ClosedOrbit horizontal_orbit(const ResonatorGeometry& geom, int repetitions);

// Horizontal orbit repetitions (L = 2nD) plus single-diffraction orbits
// built from pairs of tip legs; sorted by length, truncated at L_max.
std::vector<ClosedOrbit> build_orbit_catalog(const ResonatorGeometry& geom, double length_max);

// Number of diffractive orbits of repetition group n via the given tip.
int diffractive_count(const std::vector<ClosedOrbit>& catalog, int group, Tip which);

}  // namespace billiard
