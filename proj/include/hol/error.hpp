#pragma once

#include <stdexcept>
#include <string>

namespace hol {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files, walk literals, element encodings.
struct ParseError : Error {
  using Error::Error;
};

// Search or enumeration cap exceeded (group order, vertex count, closure size).
struct BoundsError : Error {
  using Error::Error;
};

// Caller broke an operation precondition (descriptor mismatch, endpoint mismatch).
struct PreconditionError : Error {
  using Error::Error;
};

// Data fails a structural law (holonomy-isomorphism diagram, graph connectivity).
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace hol
