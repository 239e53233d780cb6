#pragma once

#include <stdexcept>
#include <string>

namespace phasequiv {

/// Malformed or out-of-range input (bad files, bad arguments, invalid potentials).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the range a routine supports, e.g. a Riccati order above 4.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A boundary ratio or its inverse vanishes, so the closed-form wave number is undefined.
class DegenerateBoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure inside a solver (no convergence, step underflow, budget exceeded).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasequiv
