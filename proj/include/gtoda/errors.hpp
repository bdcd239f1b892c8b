#pragma once

#include <stdexcept>
#include <string>

namespace gtoda {

/// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad sizes, out-of-range indices, mismatched grids.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (x <= 0 for digamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Contour placement violates the ordering a contour integral requires.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// Requested dimension is beyond what a routine supports (e.g. Whittaker N > 3).
class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or produced non-finite output.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An SDE path tripped the explosion guard.
class AbortedPath : public NumericError {
 public:
  AbortedPath(const std::string& what, double trip_time)
      : NumericError(what), trip_time_(trip_time) {}
  double trip_time() const noexcept { return trip_time_; }

 private:
  double trip_time_;
};

}  // namespace gtoda
