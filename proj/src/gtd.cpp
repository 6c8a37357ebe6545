#include "billiard/gtd.hpp"

#include <cmath>

#include "billiard/antenna.hpp"
#include "billiard/errors.hpp"

namespace billiard {

namespace {

using Complex = std::complex<double>;

const Complex kEighthTurn = std::polar(1.0, kPi / 4.0);

double clamped_secant(double x, bool& clamped) {
  const double c = std::cos(x);
  if (std::abs(c) < 1.0 / kSecantClamp) {
    clamped = true;
    return c < 0.0 ? -kSecantClamp : kSecantClamp;
  }
  return 1.0 / c;
}

// Amplitude of the wall-image dipole along a ray leaving (or reaching) the
// antenna foot with unit direction u; the image sign is in the Maslov count.
double dipole_factor(WaveNumber k, double antenna_offset, Vec2 u) {
  return 2.0 * std::sin(k.value() * antenna_offset * std::abs(u.x));
}

double spreading(const RayPath& leg, const SemiclassicalOptions& opts, bool& regularized) {
  const double m12 = std::abs(leg.transfer.b);
  if (m12 < opts.focus_epsilon) {
    regularized = true;
    return opts.focus_epsilon;
  }
  return m12;
}

}  // namespace

EdgeCoefficient knife_edge_coefficient(WaveNumber k, double angle_in, double angle_out) {
  EdgeCoefficient out;
  const double bracket = clamped_secant(0.5 * (angle_out - angle_in), out.clamped) -
                         clamped_secant(0.5 * (angle_out + angle_in), out.clamped);
  out.value = -kEighthTurn / (2.0 * std::sqrt(2.0 * kPi * k.value())) * bracket;
  return out;
}

OrbitTerm orbit_contribution(const ClosedOrbit& orbit, WaveNumber k, double antenna_offset,
                             const SemiclassicalOptions& opts) {
  if (!(orbit.length > 0.0) || orbit.branches.empty()) {
    throw ConfigError("orbit", "closed orbit must have positive length");
  }
  OrbitTerm term;
  const Complex phase = std::polar(1.0, k.value() * orbit.length - orbit.maslov_count * kPi / 2.0);
  double spread = 1.0;
  for (const auto& leg : orbit.branches) spread *= spreading(leg, opts, term.regularized);
  Complex amp = kEighthTurn / std::sqrt(8.0 * kPi * k.value() * spread);
  amp *= dipole_factor(k, antenna_offset, orbit.branches.front().launch_direction()) *
         dipole_factor(k, antenna_offset, orbit.branches.back().arrival_direction());
  for (const auto& ev : orbit.diffraction_events) {
    const EdgeCoefficient d = knife_edge_coefficient(k, ev.angle_in, ev.angle_out);
    term.clamped = term.clamped || d.clamped;
    amp *= d.value;
  }
  term.value = amp * phase * static_cast<double>(orbit.multiplicity);
  return term;
}

ReturnAmplitude semiclassical_return(const std::vector<ClosedOrbit>& catalog, WaveNumber k,
                                     double antenna_offset, const SemiclassicalOptions& opts) {
  ReturnAmplitude out;
  if (catalog.empty()) out.warnings.emplace_back("empty orbit catalog; return amplitude is zero");
  for (const auto& orbit : catalog) {
    if (!opts.include_diffraction && orbit.kind == OrbitKind::Diffractive) continue;
    const OrbitTerm t = orbit_contribution(orbit, k, antenna_offset, opts);
    out.breakdown.emplace_back(orbit.id, t.value);
    out.total += t.value;
    out.clamped += t.clamped;
    out.regularized += t.regularized;
  }
  if (out.clamped) {
    out.warnings.push_back(std::to_string(out.clamped) +
                           " edge coefficient(s) clamped at an optical boundary");
  }
  if (out.regularized) {
    out.warnings.push_back(std::to_string(out.regularized) +
                           " orbit(s) with a focus on the antenna regularised");
  }
  return out;
}

ReturnAmplitude semiclassical_return(const ResonatorGeometry& geom, WaveNumber k,
                                     double length_max, const SemiclassicalOptions& opts) {
  return semiclassical_return(build_orbit_catalog(geom, length_max), k, geom.antenna_offset(),
                              opts);
}

std::complex<double> semiclassical_site_green(const ResonatorGeometry& geom, WaveNumber k,
                                              const ReturnAmplitude& amplitude) {
  return wall_only_site_green(k, geom.antenna_offset()) + amplitude.total;
}

double semiclassical_transmission(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                                  const std::vector<ClosedOrbit>& catalog,
                                  const SemiclassicalOptions& opts) {
  const ReturnAmplitude amp = semiclassical_return(catalog, k, geom.antenna_offset(), opts);
  return transmission_from_s11(s11_from_site_green(semiclassical_site_green(geom, k, amp), kappa));
}

double semiclassical_transmission(const ResonatorGeometry& geom, WaveNumber k, double kappa,
                                  double length_max, const SemiclassicalOptions& opts) {
  return semiclassical_transmission(geom, k, kappa, build_orbit_catalog(geom, length_max), opts);
}

}  // namespace billiard
