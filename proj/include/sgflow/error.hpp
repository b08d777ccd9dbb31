#pragma once

#include <stdexcept>
#include <string>

namespace sgflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a special function (negative, non-finite, or a pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: inconsistent length scales, bad grids, non-symmetric tensors.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Material parameters that violate the dissipation inequalities.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: zero pivot, quadrature that did not reach its tolerance.
class SolverError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public SolverError {
 public:
  QuadratureError(const std::string& what, double achieved)
      : SolverError(what), achieved_(achieved) {}

  /// Error estimate reached before the recursion limit was hit.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A value that cannot be represented in double precision (e.g. exp overflow).
class SaturationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgflow
