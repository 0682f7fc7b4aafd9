#pragma once

#include <stdexcept>
#include <string>

namespace primegap {

// Bad argument values (preconditions on the math itself).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Query outside the range the oracle was built for. Never extrapolated.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Construction would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root finder could not bracket a sign change.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal assumption (e.g. non-monotone bisection bracket).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace primegap
