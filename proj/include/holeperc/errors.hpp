#pragma once

#include <stdexcept>
#include <string>

namespace holeperc {

// A property that must hold for every configuration was violated.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An oracle was asked to work on an instance larger than its configured cap.
class OracleScaleExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holeperc
