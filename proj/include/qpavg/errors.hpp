#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpavg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input, precondition violation or bad configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation that was set up correctly but could not complete.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class CollisionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoCrossingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StagnationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularJacobianError : public NumericalError {
 public:
  SingularJacobianError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Fewer usable data points than a fit requires.
class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qpavg
