#pragma once

#include <stdexcept>
#include <string>

namespace zonorun {

// Shape mismatch: non-square input, d > n, inconsistent sizes.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented precondition was violated (non-primitive vector, gcd != 1, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration exceeded its configured budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation not offered in this dimension.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zonorun
