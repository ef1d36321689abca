#pragma once

#include <stdexcept>

namespace uavloc {

/// Invalid scenario, preset, or CLI configuration. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A non-finite value surfaced during simulation. The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace uavloc
