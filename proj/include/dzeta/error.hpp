#pragma once

#include <stdexcept>
#include <string>

namespace dzeta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad rank, bad divisor syntax, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold for otherwise well-formed input,
/// e.g. the characteristic lies on the divisor or the ambient field is too small.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The ambient field does not contain the torsion or the infinity-level solutions.
class AmbientTooSmall : public PreconditionError {
 public:
  AmbientTooSmall() : PreconditionError("ambient too small") {}
  explicit AmbientTooSmall(const std::string& what) : PreconditionError("ambient too small: " + what) {}
};

}  // namespace dzeta
