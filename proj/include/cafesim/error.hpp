#pragma once

#include <stdexcept>
#include <string>

namespace cafesim {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration document problems: unknown or missing keys, bad units.
struct ConfigError : Error {
  ConfigError(std::string key_path, const std::string& message)
      : Error(key_path + ": " + message), key(std::move(key_path)) {}
  std::string key;
};

/// A type invariant does not hold; carries the offending field path.
struct ValidationError : Error {
  ValidationError(std::string field_path, const std::string& message)
      : Error(field_path + ": " + message), field(std::move(field_path)) {}
  std::string field;
};

/// A precondition on an operation argument was violated.
struct ArgumentError : Error {
  using Error::Error;
};

/// A motion would leave the usable span or exceed the remaining range.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// A clamp command was issued while a switch was already in flight,
/// or planned hold segments overlap.
struct CommandConflictError : Error {
  using Error::Error;
};

/// Two chain nodes share an along-span position; angles are undefined.
struct DegenerateGeometryError : Error {
  using Error::Error;
};

/// Integration produced a non-finite state.
struct NumericalError : Error {
  using Error::Error;
};

/// The equilibrium solver hit its iteration cap; carries the residual reached.
struct ConvergenceError : NumericalError {
  ConvergenceError(const std::string& message, double residual_newtons)
      : NumericalError(message), residual(residual_newtons) {}
  double residual;
};

/// A sizing request cannot be met under the configured tension cap.
struct InfeasibleError : Error {
  InfeasibleError(const std::string& message, double cap_newtons)
      : Error(message), tension_cap(cap_newtons) {}
  double tension_cap;
};

/// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace cafesim
