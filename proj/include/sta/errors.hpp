#pragma once

#include <stdexcept>
#include <string>

namespace sta {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input has grades outside what the operation accepts.
struct GradeError : Error {
  using Error::Error;
};

// Odd-grade content where an even multivector is required.
struct NotEvenError : Error {
  using Error::Error;
};

// psi psi~ too close to zero for the canonical decomposition.
struct NullStateError : Error {
  using Error::Error;
};

// R R~ != 1 where a versor is required.
struct VersorError : Error {
  using Error::Error;
};

// Grid too small, or two fields live on different grids.
struct GridError : Error {
  using Error::Error;
};

// Nonpositive norm: the state cannot be normalized.
struct NormError : Error {
  using Error::Error;
};

// Parameter outside the mathematical domain (e.g. Z*alpha >= l).
struct DomainError : Error {
  using Error::Error;
};

// Eigenvalue bracket does not straddle a sign change.
struct BracketError : Error {
  using Error::Error;
};

// Shooting converged onto a state with the wrong number of radial nodes.
struct NodeCountError : Error {
  NodeCountError(const std::string& what, int found_nodes)
      : Error(what), found(found_nodes) {}
  int found;
};

}  // namespace sta
