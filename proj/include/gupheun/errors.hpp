#pragma once

#include <stdexcept>
#include <string>

namespace gupheun {

/// Base class for every failure raised by the solver.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or within rounding of) a pole of a gamma function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// 4*kappa <= (ell + 1/2)^2: the oscillation index is not real and positive.
class WeakCouplingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or iteration failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not make progress.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace gupheun
