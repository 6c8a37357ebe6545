#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/units.hpp"

namespace billiard {

using Complex = std::complex<double>;

enum class GreenKind { HalfPlane, FreeSpace };

// (i/4) H0(k|r - s|); r != s.
Complex free_green(WaveNumber k, Point r, Point s);

// Dirichlet half-plane x > 0: (i/4)[H0(k|r-s|) - H0(k|r-s*|)], s* the image
// of s in the wall. Throws NumericalError for r == s.
Complex half_plane_green(WaveNumber k, Point r, Point s);

Complex green(GreenKind kind, WaveNumber k, Point r, Point s);

// Scatterer boundary: an open circular arc (theta in [-half, half] about
// the centre) or a full circle.
struct BoundaryCurve {
  bool closed = false;
  Point center;
  double radius = 1.0;
  double half_angle = 0.0;  // open arcs only

  static BoundaryCurve arc(const ResonatorGeometry& geom);
  static BoundaryCurve circle(Point center, double radius);

  double length() const;
  double distance(Point r) const;
};

struct BoundaryNode {
  Point position;
  double theta = 0.0;   // polar angle about the curve centre
  double weight = 0.0;  // quadrature weight in arc length
};

struct BoundaryDiscretization {
  std::vector<BoundaryNode> nodes;
  int size() const { return static_cast<int>(nodes.size()); }
};

struct SolverOptions {
  double nodes_per_wavelength = 16.0;
  int min_nodes = 32;
  // Smallest acceptable reciprocal condition estimate of the system.
  double min_rcond = 1e-13;
  int near_field_upsampling = 8;
};

// Node count for a curve of the given length: at least
// nodes_per_wavelength per wavelength and never below min_nodes.
int node_count(double curve_length, WaveNumber k, const SolverOptions& opts);

struct FieldSample {
  Complex value;
  bool near_boundary = false;  // inside the band where quadrature degrades
};

// Single-layer density on the scatterer for a point source, solved by
// Nystrom collocation with log-split (Kress) quadrature; open arcs use the
// cosine substitution so the nodes cluster toward the tips.
class ScatteringSolution {
 public:
  const BoundaryDiscretization& discretization() const { return disc_; }
  // sigma per node (diverges like d^{-1/2} toward open-arc tips).
  std::span<const Complex> density() const { return sigma_; }
  WaveNumber wavenumber() const { return k_; }
  Point source() const { return source_; }
  GreenKind green_kind() const { return kind_; }
  const BoundaryCurve& curve() const { return curve_; }
  double rcond() const { return rcond_; }

  Complex incident(Point r) const;
  FieldSample scattered(Point r) const;
  // Total field psi = incident + scattered.
  FieldSample field_at(Point r) const;
  // Total field at curve parameter s in [0, pi] (open) / [0, 2 pi)
  // (closed), using the singular quadrature; ~0 for a converged solve.
  Complex boundary_value(double s) const;
  Point curve_point(double s) const;
  // Spacing below which field_at() flags a point as near the boundary.
  double near_band() const;

  friend ScatteringSolution solve_boundary(const BoundaryCurve&, GreenKind, WaveNumber, Point,
                                           int, const SolverOptions&);

 private:
  struct Fine;
  const Fine& fine() const;

  BoundaryCurve curve_;
  GreenKind kind_ = GreenKind::HalfPlane;
  WaveNumber k_{1.0};
  Point source_;
  int n_ = 0;                // unknowns
  std::vector<double> s_;    // parameters of the unknowns
  std::vector<Complex> phi_; // sigma * |z'(s)|
  std::vector<Complex> sigma_;
  BoundaryDiscretization disc_;
  double rcond_ = 0.0;
  int upsampling_ = 8;
  std::shared_ptr<Fine> fine_;
};

ScatteringSolution solve_boundary(const BoundaryCurve& curve, GreenKind kind, WaveNumber k,
                                  Point source, int n, const SolverOptions& opts = {});

// Arc of the resonator, wall via images, point source at the antenna.
// n <= 0 picks node_count().
ScatteringSolution solve_arc_density(const ResonatorGeometry& geom, WaveNumber k, int n = 0,
                                     const SolverOptions& opts = {});

// Regularised system Green function at the antenna: the free-space
// logarithm (with Euler's constant) removed, i/4 retained.
Complex site_green(const ResonatorGeometry& geom, const ScatteringSolution& solved);

// S11 of the antenna model for the full-wave solution.
Complex s11_quantum(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                    const SolverOptions& opts = {});

struct Region {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

// Complex field on a rectangular lattice; index (ix, iy) -> iy * nx + ix.
struct FieldMap {
  double x0 = 0.0, y0 = 0.0, h = 1.0;
  int nx = 0, ny = 0;
  double k = 0.0;
  std::vector<Complex> psi;
  std::vector<unsigned char> mask;  // 1 = valid
  std::vector<double> e2;           // |psi|^2
  std::vector<double> h2;           // |grad psi|^2 / k^2

  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
  Point point(int ix, int iy) const { return {x0 + ix * h, y0 + iy * h}; }
};

// Samples psi on the lattice; nodes behind the wall or inside the
// boundary's near band are masked. h2 from centred differences.
FieldMap field_grid(const Region& region, double h, const ScatteringSolution& solved);

// Default map extent: wall to just past the vertex, tip to tip plus margin.
Region default_region(const ResonatorGeometry& geom, double margin = 2.0);

}  // namespace billiard
