#pragma once

#include <stdexcept>
#include <string>

namespace fracstab {

// Argument outside the documented domain of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iteration failed to bracket, converge, or meet its residual check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |Delta| fell below tolerance on an integration contour: the configuration
// sits on (or numerically on) the stability boundary.
class BoundaryProximity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The sign of beta - phi(alpha) does not change for q1 in (0, q2).
class NoCriticalOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace detail
}  // namespace fracstab
