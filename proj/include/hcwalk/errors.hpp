#pragma once

#include <stdexcept>

namespace hcwalk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed topology text, CLI flags, or sweep plan.
struct ConfigError : Error {
  using Error::Error;
};

/// Explicit graph would exceed the vertex budget.
struct SizeExceeded : Error {
  using Error::Error;
};

/// return_time with no connecting legs.
struct ZeroLegs : Error {
  using Error::Error;
};

/// Closed-form classical hitting requested with self-loops on a family
/// where the loop correction is not defined.
struct UnsupportedLoops : Error {
  using Error::Error;
};

/// First-passage linear system has no solution (target unreachable).
struct SingularSystem : Error {
  using Error::Error;
};

/// Walk operator failed its unitarity check; indicates inconsistent weights.
struct NonUnitary : Error {
  using Error::Error;
};

/// Exact expected hitting time diverges: part of the initial state never
/// reaches the target, so the resolvent is singular.
struct DarkStateDetected : Error {
  using Error::Error;
};

/// Conditional hitting time: cumulative probability neither converged nor
/// stalled within the step budget.
struct NoPlateau : Error {
  using Error::Error;
};

}  // namespace hcwalk
