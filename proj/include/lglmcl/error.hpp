#pragma once

#include <stdexcept>
#include <string>

namespace lglmcl {

/// Base class for every error raised by the solver library.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state violated rho > 0 / p > 0, or produced a non-finite value.
class InvalidStateError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A configuration or argument was rejected before any work started.
class ConfigError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// An internal algorithmic guarantee did not hold (e.g. infeasible bounds).
class InvariantViolation : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace lglmcl
