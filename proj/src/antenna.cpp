#include "billiard/antenna.hpp"

#include <cmath>

#include "billiard/special_functions.hpp"

namespace billiard {

std::complex<double> wall_only_site_green(WaveNumber k, double antenna_offset) {
  if (!(antenna_offset > 0.0)) throw ConfigError("antenna_offset_cm", "must be positive");
  const std::complex<double> i4{0.0, 0.25};
  return i4 * (1.0 - special::hankel1_0(2.0 * k.value() * antenna_offset));
}

std::complex<double> s11_from_site_green(std::complex<double> site_green, double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("coupling_kappa", "must be positive");
  const std::complex<double> ikg = std::complex<double>{0.0, kappa} * site_green;
  return (1.0 + ikg) / (1.0 - ikg);
}

double transmission_from_s11(std::complex<double> s11) { return 1.0 - std::norm(s11); }

}  // namespace billiard
