#pragma once

#include "billiard/errors.hpp"
#include "billiard/geometry.hpp"

namespace billiard {

inline constexpr double kSpeedOfLightCmPerNs = 29.9792458;

// Free-space wave number in 1/cm; f = c k / (2 pi).
class WaveNumber {
 public:
  explicit WaveNumber(double k) : k_(k) {
    if (!(k > 0.0)) throw ConfigError("wavenumber", "must be positive");
  }
  static WaveNumber from_ghz(double frequency_ghz) {
    if (!(frequency_ghz > 0.0)) throw ConfigError("frequency_ghz", "must be positive");
    return WaveNumber(2.0 * kPi * frequency_ghz / kSpeedOfLightCmPerNs);
  }
  double value() const { return k_; }
  double ghz() const { return k_ * kSpeedOfLightCmPerNs / (2.0 * kPi); }
  double wavelength() const { return 2.0 * kPi / k_; }

 private:
  double k_;
};

}  // namespace billiard
