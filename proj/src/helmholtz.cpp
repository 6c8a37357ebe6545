#include "billiard/helmholtz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>

#include "billiard/antenna.hpp"
#include "billiard/errors.hpp"
#include "billiard/special_functions.hpp"

namespace billiard {

namespace {

constexpr Complex kI4{0.0, 0.25};

}  // namespace

Complex free_green(WaveNumber k, Point r, Point s) {
  const double rho = distance(r, s);
  if (rho == 0.0) throw NumericalError("free_green: coincident points");
  return kI4 * special::hankel1_0(k.value() * rho);
}

Complex half_plane_green(WaveNumber k, Point r, Point s) {
  const double rho = distance(r, s);
  if (rho == 0.0) throw NumericalError("half_plane_green: coincident points");
  const double rho_image = distance(r, mirror_x(s));
  return kI4 * (special::hankel1_0(k.value() * rho) - special::hankel1_0(k.value() * rho_image));
}

Complex green(GreenKind kind, WaveNumber k, Point r, Point s) {
  return kind == GreenKind::HalfPlane ? half_plane_green(k, r, s) : free_green(k, r, s);
}

BoundaryCurve BoundaryCurve::arc(const ResonatorGeometry& geom) {
  BoundaryCurve c;
  c.closed = false;
  c.center = geom.arc_center();
  c.radius = geom.radius();
  c.half_angle = geom.half_angle();
  return c;
}

BoundaryCurve BoundaryCurve::circle(Point center, double radius) {
  if (!(radius > 0.0)) throw ConfigError("radius", "must be positive");
  BoundaryCurve c;
  c.closed = true;
  c.center = center;
  c.radius = radius;
  return c;
}

double BoundaryCurve::length() const {
  return closed ? 2.0 * kPi * radius : 2.0 * half_angle * radius;
}

double BoundaryCurve::distance(Point r) const {
  const Vec2 q = r - center;
  const double rho = norm(q);
  if (closed) return std::abs(rho - radius);
  const double theta = std::atan2(q.y, q.x);
  if (std::abs(theta) <= half_angle) return std::abs(rho - radius);
  const Point up = center + Vec2{radius * std::cos(half_angle), radius * std::sin(half_angle)};
  const Point down = mirror_y(up - center) + center;
  return std::min(billiard::distance(r, up), billiard::distance(r, down));
}

int node_count(double curve_length, WaveNumber k, const SolverOptions& opts) {
  const double per_length = opts.nodes_per_wavelength / k.wavelength();
  return std::max(opts.min_nodes, static_cast<int>(std::ceil(per_length * curve_length)));
}

namespace {

// Curve parameterisation z(s). Open arcs: theta = half cos s, so s in
// [0, 2 pi) covers the arc twice and densities are even in s.
struct Param {
  BoundaryCurve curve;

  double theta(double s) const { return curve.closed ? s : curve.half_angle * std::cos(s); }
  Point point(double s) const {
    const double t = theta(s);
    return curve.center + Vec2{curve.radius * std::cos(t), curve.radius * std::sin(t)};
  }
  double speed(double s) const {
    return curve.closed ? curve.radius : curve.radius * curve.half_angle * std::abs(std::sin(s));
  }
  // Limit of log(rho^2 / prod 4 sin^2(...)) at a coincident point.
  double log_limit() const {
    return curve.closed ? std::log(curve.radius * curve.radius)
                        : std::log(std::pow(curve.radius * curve.half_angle, 2) / 4.0);
  }
};

// Quadrature for the full double cover / closed curve: M nodes in [0, 2 pi).
struct Grid {
  int unknowns = 0;
  int m = 0;        // quadrature nodes
  double c = 1.0;   // 1/2 for the doubly covered open arc
  std::vector<double> s;

  double node(int j) const { return s[static_cast<std::size_t>(j)]; }
  int fold(int j) const { return j < unknowns ? j : m - 1 - j; }
};

Grid make_grid(const BoundaryCurve& curve, int n) {
  Grid g;
  if (curve.closed) {
    if (n % 2) ++n;
    g.unknowns = n;
    g.m = n;
    g.c = 1.0;
    for (int j = 0; j < n; ++j) g.s.push_back(2.0 * kPi * j / n);
  } else {
    g.unknowns = n;
    g.m = 2 * n;
    g.c = 0.5;
    for (int j = 0; j < 2 * n; ++j) g.s.push_back((j + 0.5) * kPi / n);
  }
  return g;
}

// Kress weight R(tau) for int_0^{2pi} log(4 sin^2((t - s)/2)) f(s) ds with
// 2 nh equispaced nodes; tau = t - s_j.
double kress_weight(double tau, int nh) {
  double sum = 0.0;
  for (int m = 1; m < nh; ++m) sum += std::cos(m * tau) / m;
  return -2.0 * kPi / nh * sum - kPi / (static_cast<double>(nh) * nh) * std::cos(nh * tau);
}

std::vector<double> kress_table(int m) {
  const int nh = m / 2;
  std::vector<double> table(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) table[static_cast<std::size_t>(q)] = kress_weight(q * kPi / nh, nh);
  return table;
}

double log4sin2(double x) {
  const double s = std::sin(0.5 * x);
  return std::log(4.0 * s * s);
}

int wrap(int q, int m) {
  q %= m;
  return q < 0 ? q + m : q;
}

// Regularised diagonal of the single-layer kernel after removing
// -(1/4pi) J0 * sum log(4 sin^2).
Complex diagonal_remainder(WaveNumber k, const Param& p) {
  return kI4 - (std::log(0.5 * k.value()) + special::kEulerGamma) / (2.0 * kPi) -
         p.log_limit() / (4.0 * kPi);
}

}  // namespace

struct ScatteringSolution::Fine {
  std::vector<Point> points;
  std::vector<Complex> coef;  // weight * sigma
  double spacing = 0.0;
};

ScatteringSolution solve_boundary(const BoundaryCurve& curve, GreenKind kind, WaveNumber k,
                                  Point source, int n, const SolverOptions& opts) {
  if (n < 4) throw ConfigError("nodes", "need at least 4 boundary nodes");
  if (kind == GreenKind::HalfPlane && source.x <= 0.0) {
    throw ConfigError("antenna_offset_cm", "source must lie in x > 0");
  }
  const Param p{curve};
  const Grid g = make_grid(curve, n);
  const int nu = g.unknowns;
  const std::vector<double> rtab = kress_table(g.m);
  const double trap = 2.0 * kPi / g.m;
  const Complex diag = diagonal_remainder(k, p);

  std::vector<Point> z(static_cast<std::size_t>(g.m));
  for (int j = 0; j < g.m; ++j) z[static_cast<std::size_t>(j)] = p.point(g.node(j));

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nu, nu);
  Eigen::VectorXcd rhs(nu);
  for (int i = 0; i < nu; ++i) {
    const double si = g.node(i);
    const Point zi = z[static_cast<std::size_t>(i)];
    const int partner = curve.closed ? i : g.m - 1 - i;
    for (int j = 0; j < g.m; ++j) {
      const double sj = g.node(j);
      double rweight = rtab[static_cast<std::size_t>(wrap(i - j, g.m))];
      if (!curve.closed) rweight += rtab[static_cast<std::size_t>(wrap(-(i + j + 1), g.m))];
      Complex entry;
      if (j == i || j == partner) {
        entry = -rweight / (4.0 * kPi) + trap * diag;
      } else {
        const Complex h = special::hankel1_0(k.value() * distance(zi, z[static_cast<std::size_t>(j)]));
        double logs = log4sin2(sj - si);
        if (!curve.closed) logs += log4sin2(sj + si);
        const Complex remainder = kI4 * h + h.real() * logs / (4.0 * kPi);
        entry = -h.real() * rweight / (4.0 * kPi) + trap * remainder;
      }
      if (kind == GreenKind::HalfPlane) {
        entry -= trap * kI4 *
                 special::hankel1_0(k.value() * distance(zi, mirror_x(z[static_cast<std::size_t>(j)])));
      }
      a(i, g.fold(j)) += g.c * entry;
    }
    rhs(i) = -green(kind, k, zi, source);
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  ScatteringSolution sol;
  sol.rcond_ = lu.rcond();
  if (!(sol.rcond_ >= opts.min_rcond)) {
    throw NumericalError("boundary system is ill-conditioned (rcond " +
                         std::to_string(sol.rcond_) +
                         "); increase nodes_per_wavelength or shift the wave number");
  }
  const Eigen::VectorXcd phi = lu.solve(rhs);

  sol.curve_ = curve;
  sol.kind_ = kind;
  sol.k_ = k;
  sol.source_ = source;
  sol.n_ = nu;
  sol.upsampling_ = std::max(1, opts.near_field_upsampling);
  sol.fine_ = std::make_shared<ScatteringSolution::Fine>();
  const double fold_weight = g.c * trap * (curve.closed ? 1.0 : 2.0);
  for (int j = 0; j < nu; ++j) {
    const double sj = g.node(j);
    const double speed = p.speed(sj);
    sol.s_.push_back(sj);
    sol.phi_.push_back(phi(j));
    sol.sigma_.push_back(phi(j) / speed);
    sol.disc_.nodes.push_back({z[static_cast<std::size_t>(j)], p.theta(sj), fold_weight * speed});
  }
  return sol;
}

ScatteringSolution solve_arc_density(const ResonatorGeometry& geom, WaveNumber k, int n,
                                     const SolverOptions& opts) {
  const BoundaryCurve curve = BoundaryCurve::arc(geom);
  if (n <= 0) n = node_count(curve.length(), k, opts);
  return solve_boundary(curve, GreenKind::HalfPlane, k, geom.antenna(), n, opts);
}

Complex ScatteringSolution::incident(Point r) const { return green(kind_, k_, r, source_); }

Point ScatteringSolution::curve_point(double s) const { return Param{curve_}.point(s); }

double ScatteringSolution::near_band() const {
  const double coarse = curve_.closed ? 2.0 * kPi * curve_.radius / n_
                                      : curve_.radius * curve_.half_angle * kPi / n_;
  return curve_.closed ? 2.0 * coarse : 2.0 * coarse / upsampling_;
}

const ScatteringSolution::Fine& ScatteringSolution::fine() const {
  static std::mutex build_mutex;
  std::lock_guard<std::mutex> lock(build_mutex);
  Fine& f = *fine_;
  if (!f.points.empty()) return f;
  const Param p{curve_};
  const int n = n_;
  // Cosine series of the even density on the shifted grid (DCT-II).
  std::vector<Complex> coeff(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += phi_[static_cast<std::size_t>(j)] * std::cos(m * s_[static_cast<std::size_t>(j)]);
    coeff[static_cast<std::size_t>(m)] = acc * (m == 0 ? 1.0 / n : 2.0 / n);
  }
  const int nf = n * upsampling_;
  for (int l = 0; l < nf; ++l) {
    const double s = (l + 0.5) * kPi / nf;
    Complex value = 0.0;
    for (int m = 0; m < n; ++m) value += coeff[static_cast<std::size_t>(m)] * std::cos(m * s);
    f.points.push_back(p.point(s));
    f.coef.push_back(value * (kPi / nf));
  }
  f.spacing = curve_.radius * curve_.half_angle * kPi / nf;
  return f;
}

FieldSample ScatteringSolution::scattered(Point r) const {
  const double d = curve_.distance(r);
  const double coarse = curve_.closed ? 2.0 * kPi * curve_.radius / n_
                                      : curve_.radius * curve_.half_angle * kPi / n_;
  FieldSample out;
  out.near_boundary = d < near_band();
  if (!curve_.closed && d < 2.0 * coarse) {
    const Fine& f = fine();
    for (std::size_t l = 0; l < f.points.size(); ++l) {
      out.value += f.coef[l] * green(kind_, k_, r, f.points[l]);
    }
    return out;
  }
  for (int j = 0; j < n_; ++j) {
    const auto& node = disc_.nodes[static_cast<std::size_t>(j)];
    out.value += node.weight * sigma_[static_cast<std::size_t>(j)] * green(kind_, k_, r, node.position);
  }
  return out;
}

FieldSample ScatteringSolution::field_at(Point r) const {
  FieldSample s = scattered(r);
  s.value += incident(r);
  return s;
}

Complex ScatteringSolution::boundary_value(double s) const {
  const Param p{curve_};
  const Grid g = make_grid(curve_, n_);
  const int nh = g.m / 2;
  const double trap = 2.0 * kPi / g.m;
  const Point zt = p.point(s);
  Complex acc = 0.0;
  for (int j = 0; j < g.m; ++j) {
    const double sj = g.node(j);
    const Point zj = p.point(sj);
    const double rho = distance(zt, zj);
    if (rho == 0.0) throw NumericalError("boundary_value: target coincides with a node");
    const Complex h = special::hankel1_0(k_.value() * rho);
    double rweight = kress_weight(s - sj, nh);
    double logs = log4sin2(sj - s);
    if (!curve_.closed) {
      rweight += kress_weight(-s - sj, nh);
      logs += log4sin2(sj + s);
    }
    Complex entry = -h.real() * rweight / (4.0 * kPi) + trap * (kI4 * h + h.real() * logs / (4.0 * kPi));
    if (kind_ == GreenKind::HalfPlane) {
      entry -= trap * kI4 * special::hankel1_0(k_.value() * distance(zt, mirror_x(zj)));
    }
    acc += g.c * entry * phi_[static_cast<std::size_t>(g.fold(j))];
  }
  return acc + incident(zt);
}

Complex site_green(const ResonatorGeometry& geom, const ScatteringSolution& solved) {
  const WaveNumber k = solved.wavenumber();
  Complex g = wall_only_site_green(k, geom.antenna_offset());
  g += solved.scattered(geom.antenna()).value;
  return g;
}

Complex s11_quantum(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                    const SolverOptions& opts) {
  const ScatteringSolution solved = solve_arc_density(geom, k, 0, opts);
  return s11_from_site_green(site_green(geom, solved), kappa);
}

FieldMap field_grid(const Region& region, double h, const ScatteringSolution& solved) {
  if (!(h > 0.0)) throw ConfigError("grid_h_cm", "must be positive");
  if (!(region.x1 > region.x0) || !(region.y1 > region.y0)) {
    throw ConfigError("region", "empty map extent");
  }
  FieldMap map;
  map.x0 = region.x0;
  map.y0 = region.y0;
  map.h = h;
  map.k = solved.wavenumber().value();
  map.nx = static_cast<int>(std::floor((region.x1 - region.x0) / h + 1e-9)) + 1;
  map.ny = static_cast<int>(std::floor((region.y1 - region.y0) / h + 1e-9)) + 1;
  const std::size_t total = static_cast<std::size_t>(map.nx) * map.ny;
  map.psi.assign(total, 0.0);
  map.mask.assign(total, 0);
  map.e2.assign(total, 0.0);
  map.h2.assign(total, 0.0);
  const bool half_plane = solved.green_kind() == GreenKind::HalfPlane;
  for (int iy = 0; iy < map.ny; ++iy) {
    for (int ix = 0; ix < map.nx; ++ix) {
      const Point r = map.point(ix, iy);
      const std::size_t id = map.index(ix, iy);
      if ((half_plane && r.x < 0.0) || r == solved.source()) continue;
      const FieldSample f = solved.field_at(r);
      if (f.near_boundary) continue;
      map.psi[id] = f.value;
      map.mask[id] = 1;
      map.e2[id] = std::norm(f.value);
    }
  }
  // Centred differences, one-sided next to masked nodes.
  auto derivative = [&](int ix, int iy, int dx, int dy, bool& ok) -> Complex {
    const int xm = ix - dx, ym = iy - dy, xp = ix + dx, yp = iy + dy;
    auto valid = [&](int x, int y) {
      return x >= 0 && y >= 0 && x < map.nx && y < map.ny && map.mask[map.index(x, y)];
    };
    const bool lo = valid(xm, ym), hi = valid(xp, yp);
    ok = lo || hi;
    const Complex c = map.psi[map.index(ix, iy)];
    if (lo && hi) return (map.psi[map.index(xp, yp)] - map.psi[map.index(xm, ym)]) / (2.0 * h);
    if (hi) return (map.psi[map.index(xp, yp)] - c) / h;
    if (lo) return (c - map.psi[map.index(xm, ym)]) / h;
    return 0.0;
  };
  std::vector<unsigned char> mask = map.mask;
  for (int iy = 0; iy < map.ny; ++iy) {
    for (int ix = 0; ix < map.nx; ++ix) {
      const std::size_t id = map.index(ix, iy);
      if (!map.mask[id]) continue;
      bool okx = false, oky = false;
      const Complex gx = derivative(ix, iy, 1, 0, okx);
      const Complex gy = derivative(ix, iy, 0, 1, oky);
      if (!okx || !oky) {
        mask[id] = 0;
        continue;
      }
      map.h2[id] = (std::norm(gx) + std::norm(gy)) / (map.k * map.k);
    }
  }
  map.mask = std::move(mask);
  for (std::size_t id = 0; id < total; ++id) {
    if (!map.mask[id]) {
      map.e2[id] = 0.0;
      map.h2[id] = 0.0;
    }
  }
  return map;
}

Region default_region(const ResonatorGeometry& geom, double margin) {
  const double ymax = geom.tip(Tip::Upper).y + margin;
  return {0.0, geom.separation() + margin, -ymax, ymax};
}

}  // namespace billiard
