#pragma once

#include <stdexcept>
#include <string>

namespace knotdance {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed token in a code or braid word.
struct SyntaxError : Error {
  using Error::Error;
};

// Pairing invariants of a diagram code violated.
struct ValidationError : Error {
  using Error::Error;
};

struct InvalidConfiguration : Error {
  using Error::Error;
};

struct InvalidTrace : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

// Braid letter index outside [1, strands-1].
struct IndexOutOfRange : Error {
  using Error::Error;
};

// Closure of a braid word is a link with more than one component.
struct NotAKnot : Error {
  explicit NotAKnot(int component_count)
      : Error("closure has " + std::to_string(component_count) +
              " components, expected 1"),
        components(component_count) {}
  int components;
};

struct ResourceLimit : Error {
  using Error::Error;
};

// No dancer count admits a valid configuration (coincident/smoothing only).
struct Infeasible : Error {
  using Error::Error;
};

}  // namespace knotdance
