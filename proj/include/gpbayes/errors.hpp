#pragma once

#include <stdexcept>
#include <string>

namespace gpbayes {

// Root of every error the library raises. The CLI maps UsageError to exit
// status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// m = exp(ab + c) outside (0, 4), i.e. |lambda2| >= 1.
class DispersionRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation of the GP pmf where lambda1 + x*lambda2 <= 0.
class SupportError : public DomainError {
 public:
  SupportError(long k, long x, double base);
  long k() const { return k_; }
  long x() const { return x_; }
  double base() const { return base_; }

 private:
  long k_;
  long x_;
  double base_;
};

// Bernoulli order beyond what the floating-point recurrence supports.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// An iterative algorithm hit its iteration cap.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A truncated table is too coarse for the requested quantity.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Misuse of an API that is not a numeric domain problem, e.g. comparing
// pmfs on different supports, or malformed command-line input.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpbayes
