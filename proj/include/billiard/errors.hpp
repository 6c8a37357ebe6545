#pragma once

#include <stdexcept>
#include <string>

namespace billiard {

// Invalid user-supplied parameter. `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A computation could not produce a trustworthy result (ill-conditioned
// system, singular input, non-uniform sampling, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace billiard
