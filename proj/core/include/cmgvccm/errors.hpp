#pragma once

#include <stdexcept>
#include <string>

namespace vccm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration input.
struct ConfigError : Error {
  using Error::Error;
};

/// Inertia matrix conditioning exceeded the guard threshold; the state is
/// outside the modeled regime.
struct SingularInertiaError : Error {
  using Error::Error;
};

/// The synthesis problem admits no solution at the requested margin.
struct InfeasibleError : Error {
  using Error::Error;
};

/// The solver hit its iteration budget without a decision.
struct NoConvergenceError : Error {
  using Error::Error;
};

/// The requested reference is not a solution of the plant dynamics.
struct ReferenceError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace vccm
