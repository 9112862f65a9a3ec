#pragma once

#include <stdexcept>
#include <string>

namespace routeq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

// Thrown when the origin-destination path count exceeds the configured cap.
struct PathExplosion : Error {
  long count;
  long cap;
  PathExplosion(long count_, long cap_)
      : Error("path enumeration exceeded cap: more than " + std::to_string(count_) +
              " paths, cap " + std::to_string(cap_)),
        count(count_), cap(cap_) {}
};

struct NoPath : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidDemand : Error {
  using Error::Error;
};

struct NoPathsLeft : Error {
  using Error::Error;
};

struct SubsetCapExceeded : Error {
  using Error::Error;
};

struct BreakpointLimit : Error {
  using Error::Error;
};

// Wraps a non-optimal solver status encountered where an optimum was required.
struct SolverFailure : Error {
  using Error::Error;
};

}  // namespace routeq
