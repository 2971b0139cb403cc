#pragma once

#include <stdexcept>
#include <string>

namespace vertexlab {

/// Argument outside the documented evaluation domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures of the numerical machinery itself (as opposed to bad input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quadrature tail bound or cross-representation agreement check was violated.
class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iterative refinement did not converge.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int index)
      : NumericalError(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A rejection sampler met a target density above its envelope.
class EnvelopeViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid user-supplied configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace vertexlab
