#pragma once

#include <stdexcept>
#include <string>

namespace hybridopt {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vector failed the tangency check at its base point.
struct InvalidTangentError : Error {
  using Error::Error;
};

/// Projection of an ambient point with a (near-)zero block onto the manifold.
struct DegenerateProjectionError : Error {
  using Error::Error;
};

/// Two objects living on different manifolds were combined.
struct KindMismatchError : Error {
  using Error::Error;
};

/// Bad mode index, bad parameter value, or a family that fails validation.
struct ValidationError : Error {
  using Error::Error;
};

/// Initial state outside the flow and jump sets.
struct InfeasibleStartError : Error {
  using Error::Error;
};

/// The state left C ∪ D during flow; carries the last valid hybrid time.
struct EscapeError : Error {
  EscapeError(const std::string& msg, double t, int j)
      : Error(msg), last_t(t), last_j(j) {}
  double last_t;
  int last_j;
};

/// Malformed or unknown-key configuration input.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hybridopt
