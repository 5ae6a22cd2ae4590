// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace boltzkit {

/// Quadrature or derivative estimation failed to reach its tolerance.
/// Carries the residual estimate so callers can report it.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// An integral that provably diverges for the requested exponent.
class DivergenceError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// A kernel that cannot be classified (no integrable exponent <= 2).
class ClassificationError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Bad configuration file or parameter combination.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A theoretical bound was violated beyond numerical slack; signals a
/// solver bug rather than a user error.
class BoundViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace boltzkit
