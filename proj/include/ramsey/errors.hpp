#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (branch cut, pole, interval).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result that cannot be represented in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The signal diverges for the requested parameters (e.g. alpha0 = 0).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An iterative method or quadrature did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramsey
