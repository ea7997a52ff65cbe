#pragma once

#include <stdexcept>
#include <string>

namespace pseudocyl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, nonpositive
/// factor, point outside the chart, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance or hit a singularity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Requested circle length does not exceed the bifurcation threshold, so no
/// nonconstant periodic solution exists.
class BelowThresholdError : public DomainError {
 public:
  BelowThresholdError(const std::string& what, double threshold)
      : DomainError(what), threshold_(threshold) {}
  double threshold() const { return threshold_; }

 private:
  double threshold_;
};

/// Energy level at (or outside) the edge of the closed-orbit window.
class DegenerateOrbitError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudocyl
