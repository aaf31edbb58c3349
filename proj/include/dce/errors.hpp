#pragma once

#include <stdexcept>
#include <string>

namespace dce {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad argument value or out-of-range parameter.
class ArgumentError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "argument"; }
};

/// Covariance matrix that is not symmetric, not positive definite, or unphysical.
class InvalidStateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_state"; }
};

/// Function evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

/// Matrix block does not have the required structure.
class ShapeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "shape"; }
};

class BracketingError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "bracketing"; }
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

}  // namespace dce
