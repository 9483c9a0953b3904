#pragma once

#include <stdexcept>
#include <string>

namespace homega {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature or scan failed to reach the requested accuracy.
class NumericError : public Error {
 public:
  using Error::Error;
};

// The requested accuracy cannot be certified within the term budget.
// Carries the bound that was actually achieved.
class TruncationBudgetError : public NumericError {
 public:
  TruncationBudgetError(const std::string& what, double achieved)
      : NumericError(what), achieved_bound(achieved) {}
  double achieved_bound;
};

// Series coefficients grow faster than any polynomial, so no truncation
// order can be certified.  Raised when a kernel is evaluated for a weight
// outside the upper doubling class.
class KernelGrowthError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The quadrature grid cannot resolve the request (e.g. a moment exponent
// beyond what double precision panels can represent).
class ResolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace homega
