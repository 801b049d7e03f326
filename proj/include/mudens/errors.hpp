#pragma once

#include <stdexcept>
#include <string>

namespace mudens {

// Error categories the CLI maps to distinct exit codes.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a guarded fixed-point comparison cannot be decided at the
// stored precision. Callers should retry with a higher-precision constant.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A prime that an elliptic-curve set cannot classify (bad reduction).
struct excluded_prime : std::domain_error {
  using std::domain_error::domain_error;
};

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mudens
