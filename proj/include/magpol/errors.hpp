#pragma once

#include <stdexcept>
#include <string>

namespace magpol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is outside the range where the quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Samples are non-finite, negative where a density is expected, or all zero
/// where a nonzero field is required.
class InvalidField : public Error {
 public:
  using Error::Error;
};

/// The field has not decayed inside the periodic box; spectral quantities
/// would be polluted by wrap-around.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its requested tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Iterative minimization stopped without meeting its stopping criterion.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double residual, long iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

/// Least-squares problem is under-determined or rank deficient.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace magpol
