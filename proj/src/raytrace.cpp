#include "billiard/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

double surface_epsilon(const ResonatorGeometry& geom) { return 1e-9 * geom.radius(); }

enum class Event { None, Wall, Arc };

struct NextHit {
  Event event = Event::None;
  Point point;
  double distance = 0.0;
};

NextHit next_hit(Point p, Vec2 d, const ResonatorGeometry& geom) {
  NextHit best;
  best.distance = std::numeric_limits<double>::infinity();
  if (auto arc = ray_arc_intersect(p, d, geom, surface_epsilon(geom))) {
    best = {Event::Arc, arc->hit, arc->path_length};
  }
  if (d.x < 0.0 && p.x > 0.0) {
    const double t = -p.x / d.x;
    if (t < best.distance) best = {Event::Wall, Point{0.0, p.y + t * d.y}, t};
  }
  return best;
}

Vec2 bounce(Event event, Point at, Vec2 d, const ResonatorGeometry& geom) {
  if (event == Event::Wall) return {-d.x, d.y};
  const Vec2 n = normalized(geom.arc_center() - at);
  return normalized(reflect(d, n));
}

}  // namespace

Trajectory trace(Point start, Vec2 direction, const ResonatorGeometry& geom, int max_bounces) {
  if (start.x < 0.0) throw ConfigError("start", "ray must start in the x >= 0 half-plane");
  Trajectory out;
  out.vertices.push_back(start);
  Point p = start;
  Vec2 d = normalized(direction);
  while (out.bounce_count < max_bounces) {
    const NextHit hit = next_hit(p, d, geom);
    if (hit.event == Event::None) {
      out.escaped = true;
      return out;
    }
    out.total_length += hit.distance;
    d = bounce(hit.event, hit.point, d, geom);
    p = hit.point;
    if (hit.event == Event::Wall) p.x = 0.0;
    out.vertices.push_back(p);
    ++out.bounce_count;
  }
  return out;
}

TransferMatrix arc_reflection(const ResonatorGeometry& geom, double cos_incidence) {
  return TransferMatrix::lens(2.0 / (geom.radius() * cos_incidence));
}

StabilityResult horizontal_monodromy(const ResonatorGeometry& geom) {
  const double d = geom.separation();
  const TransferMatrix round_trip = TransferMatrix::free_flight(d) * arc_reflection(geom, 1.0) *
                                    TransferMatrix::free_flight(d);
  StabilityResult r;
  r.trace = round_trip.trace();
  const double half = std::abs(r.trace) / 2.0;
  r.stable = half <= 1.0;
  r.lyapunov = r.stable ? 0.0 : std::acosh(half);
  return r;
}

Vec2 RayPath::launch_direction() const {
  return normalized(vertices.at(1).position - vertices.at(0).position);
}

Vec2 RayPath::arrival_direction() const {
  const auto n = vertices.size();
  return normalized(vertices.at(n - 1).position - vertices.at(n - 2).position);
}

RayPath make_ray_path(std::vector<PathVertex> vertices, const ResonatorGeometry& geom) {
  if (vertices.size() < 2) throw NumericalError("ray path needs at least two vertices");
  RayPath path;
  TransferMatrix m;
  int previous_sign = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Point from = vertices[i - 1].position;
    const Point to = vertices[i].position;
    const double leg = distance(from, to);
    const double step = leg / kConjugateSamplesPerLeg;
    for (int k = 1; k <= kConjugateSamplesPerLeg; ++k) {
      double s = step * k;
      double m12 = m.b + s * m.d;
      if (m12 == 0.0) {
        ++path.degenerate_samples;
        s -= 0.5 * step;
        m12 = m.b + s * m.d;
      }
      const int sign = (m12 > 0.0) - (m12 < 0.0);
      if (sign != 0) {
        if (previous_sign != 0 && sign != previous_sign) ++path.conjugate_points;
        previous_sign = sign;
      }
    }
    m = TransferMatrix::free_flight(leg) * m;
    path.length += leg;

    if (i + 1 == vertices.size()) break;
    switch (vertices[i].kind) {
      case VertexKind::Arc: {
        const Vec2 incoming = normalized(to - from);
        const Vec2 n = normalized(geom.arc_center() - to);
        m = arc_reflection(geom, std::abs(dot(incoming, n))) * m;
        ++path.reflections;
        break;
      }
      case VertexKind::Wall:
        ++path.reflections;
        break;
      default:
        throw NumericalError("interior path vertex must be a wall or arc reflection");
    }
  }
  path.transfer = m;
  path.vertices = std::move(vertices);
  return path;
}

RayPath reversed(const RayPath& path, const ResonatorGeometry& geom) {
  std::vector<PathVertex> v(path.vertices.rbegin(), path.vertices.rend());
  return make_ray_path(std::move(v), geom);
}

RayPath mirrored(const RayPath& path, const ResonatorGeometry& geom) {
  std::vector<PathVertex> v = path.vertices;
  for (auto& pv : v) pv.position = mirror_y(pv.position);
  return make_ray_path(std::move(v), geom);
}

int maslov_count(const RayPath& path) { return 2 * path.reflections + path.conjugate_points; }

namespace {

struct Shot {
  bool valid = false;
  double theta_end = 0.0;
  std::vector<PathVertex> vertices;
};

Shot shoot(const ResonatorGeometry& geom, double phi, int n_specular) {
  Shot shot;
  Point p = geom.antenna_foot();
  Vec2 d{std::cos(phi), std::sin(phi)};
  shot.vertices.push_back({p, VertexKind::Source});
  for (int b = 0; b < n_specular; ++b) {
    const NextHit hit = next_hit(p, d, geom);
    if (hit.event == Event::None) return shot;
    d = bounce(hit.event, hit.point, d, geom);
    p = hit.point;
    if (hit.event == Event::Wall) p.x = 0.0;
    shot.vertices.push_back({p, hit.event == Event::Wall ? VertexKind::Wall : VertexKind::Arc});
  }
  const auto circle = ray_circle_intersect(p, d, geom, surface_epsilon(geom));
  if (!circle) return shot;
  if (d.x < 0.0 && p.x > 0.0 && -p.x / d.x < circle->path_length) return shot;
  shot.valid = true;
  shot.theta_end = circle->theta;
  shot.vertices.push_back({circle->hit, VertexKind::Tip});
  return shot;
}

constexpr int kScanIntervals = 4000;
constexpr double kBracketJump = 0.3;  // rad; larger jumps are discontinuities

}  // namespace

std::vector<RayPath> shoot_to_tip_all(const ResonatorGeometry& geom, int n_specular, Tip which,
                                      ShootDiagnostics* diagnostics) {
  if (n_specular < 0) throw ConfigError("n_specular", "must be non-negative");
  const double target = which == Tip::Upper ? geom.half_angle() : -geom.half_angle();
  const Point tip = geom.tip(which);
  std::vector<RayPath> out;
  ShootDiagnostics local;

  if (n_specular == 0) {
    out.push_back(make_ray_path(
        {{geom.antenna_foot(), VertexKind::Source}, {tip, VertexKind::Tip}}, geom));
    if (diagnostics) *diagnostics = local;
    return out;
  }

  auto residual = [&](double phi, Shot& s) {
    s = shoot(geom, phi, n_specular);
    return s.valid ? s.theta_end - target : std::numeric_limits<double>::quiet_NaN();
  };

  const double lo = -0.5 * kPi;
  const double width = kPi / kScanIntervals;
  Shot s_prev, s_next, s_mid;
  double phi_prev = lo + 0.5 * width;
  double f_prev = residual(phi_prev, s_prev);
  for (int i = 1; i < kScanIntervals; ++i) {
    const double phi_next = lo + (i + 0.5) * width;
    const double f_next = residual(phi_next, s_next);
    const bool bracket = std::isfinite(f_prev) && std::isfinite(f_next) &&
                         (f_prev < 0.0) != (f_next < 0.0) &&
                         std::abs(f_prev - f_next) < kBracketJump;
    if (bracket) {
      ++local.brackets;
      double a = phi_prev, fa = f_prev, b = phi_next;
      bool ok = true;
      for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = residual(m, s_mid);
        if (!std::isfinite(fm)) {
          ok = false;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      Shot best;
      residual(0.5 * (a + b), best);
      if (ok && best.valid) {
        best.vertices.back().position = tip;
        RayPath path = make_ray_path(best.vertices, geom);
        // The snapped endpoint must stay within a tiny fraction of R.
        const double miss = distance(shoot(geom, 0.5 * (a + b), n_specular).vertices.back().position, tip);
        if (miss < 1e-8 * geom.radius()) {
          out.push_back(std::move(path));
        } else {
          ++local.nonconverged;
        }
      } else {
        ++local.nonconverged;
      }
    }
    phi_prev = phi_next;
    f_prev = f_next;
    std::swap(s_prev, s_next);
  }
  std::sort(out.begin(), out.end(),
            [](const RayPath& x, const RayPath& y) { return x.length < y.length; });
  if (diagnostics) *diagnostics = local;
  return out;
}

std::optional<RayPath> shoot_to_tip(const ResonatorGeometry& geom, int n_specular, Tip which,
                                    ShootDiagnostics* diagnostics) {
  auto all = shoot_to_tip_all(geom, n_specular, which, diagnostics);
  if (all.empty()) return std::nullopt;
  return all.front();
}

const char* to_string(OrbitKind kind) {
  return kind == OrbitKind::Geometric ? "geometric" : "diffractive";
}

std::vector<Point> ClosedOrbit::polyline() const {
  std::vector<Point> out;
  for (const auto& branch : branches) {
    for (std::size_t i = 0; i < branch.vertices.size(); ++i) {
      if (!out.empty() && i == 0) continue;
      out.push_back(branch.vertices[i].position);
    }
  }
  return out;
}

double edge_angle(const ResonatorGeometry& geom, Tip which, Vec2 direction) {
  const double h = geom.half_angle();
  Vec2 v = direction;
  if (which == Tip::Lower) v = mirror_y(v);
  const Vec2 face{std::sin(h), -std::cos(h)};
  const Vec2 inward{-std::cos(h), -std::sin(h)};
  double a = std::atan2(dot(v, inward), dot(v, face));
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

int maslov_count(const ClosedOrbit& orbit) {
  int total = 2;  // the antenna's wall image
  for (const auto& b : orbit.branches) total += maslov_count(b);
  return total;
}

ClosedOrbit horizontal_orbit(const ResonatorGeometry& geom, int repetitions) {
  if (repetitions < 1) throw ConfigError("repetitions", "must be at least 1");
  const Point foot = geom.antenna_foot();
  const Point vertex = geom.vertex();
  std::vector<PathVertex> v{{foot, VertexKind::Source}};
  for (int n = 0; n < repetitions; ++n) {
    v.push_back({vertex, VertexKind::Arc});
    v.push_back({foot, n + 1 == repetitions ? VertexKind::Antenna : VertexKind::Wall});
  }
  ClosedOrbit orbit;
  orbit.kind = OrbitKind::Geometric;
  orbit.branches.push_back(make_ray_path(std::move(v), geom));
  orbit.length = orbit.branches.front().length;
  orbit.repetitions = repetitions;
  orbit.multiplicity = 1;
  orbit.maslov_count = maslov_count(orbit);
  return orbit;
}

namespace {

ClosedOrbit diffractive_orbit(const ResonatorGeometry& geom, Tip which, const RayPath& out_leg,
                              const RayPath& back_leg) {
  ClosedOrbit orbit;
  orbit.kind = OrbitKind::Diffractive;
  RayPath home = reversed(back_leg, geom);
  home.vertices.back().kind = VertexKind::Antenna;
  DiffractionEvent ev;
  ev.tip = geom.tip(which);
  ev.which = which;
  ev.angle_in = edge_angle(geom, which, -out_leg.arrival_direction());
  ev.angle_out = edge_angle(geom, which, home.launch_direction());
  orbit.branches = {out_leg, std::move(home)};
  orbit.length = out_leg.length + back_leg.length;
  orbit.repetitions = (out_leg.reflections + back_leg.reflections) / 2 + 1;
  orbit.diffraction_events.push_back(ev);
  orbit.multiplicity = 1;
  orbit.maslov_count = maslov_count(orbit);
  return orbit;
}

}  // namespace

std::vector<ClosedOrbit> build_orbit_catalog(const ResonatorGeometry& geom, double length_max) {
  if (!(length_max > 0.0)) throw ConfigError("length_max", "must be positive");
  if (geom.antenna_transverse() != 0.0) {
    throw ConfigError("antenna_transverse_cm",
                      "the semiclassical orbit catalog requires an on-axis antenna");
  }
  std::vector<ClosedOrbit> catalog;
  for (int n = 1; 2.0 * n * geom.separation() <= length_max; ++n) {
    catalog.push_back(horizontal_orbit(geom, n));
  }

  // Every hop between bounces is at least as long as the tips' distance
  // from the wall, which bounds the useful bounce count.
  const double min_hop = geom.tip(Tip::Upper).x;
  const int max_bounces = static_cast<int>(length_max / min_hop);
  std::vector<RayPath> legs;
  double shortest = std::numeric_limits<double>::infinity();
  for (int ns = 0; ns <= max_bounces; ++ns) {
    for (auto& leg : shoot_to_tip_all(geom, ns, Tip::Upper)) {
      shortest = std::min(shortest, leg.length);
      legs.push_back(std::move(leg));
    }
  }
  for (Tip which : {Tip::Upper, Tip::Lower}) {
    std::vector<RayPath> tip_legs;
    for (const auto& leg : legs) {
      tip_legs.push_back(which == Tip::Upper ? leg : mirrored(leg, geom));
    }
    for (const auto& a : tip_legs) {
      for (const auto& b : tip_legs) {
        if (a.length + b.length > length_max) continue;
        catalog.push_back(diffractive_orbit(geom, which, a, b));
      }
    }
  }

  std::stable_sort(catalog.begin(), catalog.end(), [](const ClosedOrbit& x, const ClosedOrbit& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.kind != y.kind) return x.kind < y.kind;
    const bool xu = !x.diffraction_events.empty() && x.diffraction_events[0].which == Tip::Upper;
    const bool yu = !y.diffraction_events.empty() && y.diffraction_events[0].which == Tip::Upper;
    return xu > yu;
  });
  for (std::size_t i = 0; i < catalog.size(); ++i) catalog[i].id = static_cast<int>(i);
  return catalog;
}

int diffractive_count(const std::vector<ClosedOrbit>& catalog, int group, Tip which) {
  int count = 0;
  for (const auto& o : catalog) {
    if (o.kind == OrbitKind::Diffractive && o.repetitions == group &&
        o.diffraction_events.front().which == which) {
      count += o.multiplicity;
    }
  }
  return count;
}

}  // namespace billiard
