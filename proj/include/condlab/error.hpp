#pragma once

#include <stdexcept>
#include <string>

namespace condlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different grids or have incompatible shapes.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A translated support would leave the sampling grid.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid model parameters (e.g. n <= 1 for the appendix family).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed, or a fit is degenerate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A candidate singular function is not of constant modulus.
class NotHomogeneousError : public Error {
 public:
  using Error::Error;
};

/// Malformed run configuration or family file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace condlab
