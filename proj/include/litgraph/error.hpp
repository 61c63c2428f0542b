#pragma once

#include <stdexcept>
#include <string>

namespace litgraph {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A node/edge id was already present with a different payload.
struct ConflictError : Error {
  using Error::Error;
};

// An id does not resolve to an existing node.
struct ReferenceError : Error {
  using Error::Error;
};

// Edge endpoints do not match the edge kind, or a value has the wrong type.
struct TypeError : Error {
  using Error::Error;
};

// Tensor/sequence shapes are inconsistent.
struct DimensionError : Error {
  using Error::Error;
};

// Every transition out of some state is forbidden; no label path exists.
struct InfeasiblePathError : Error {
  using Error::Error;
};

// Loss or gradient became non-finite.
struct NumericalError : Error {
  using Error::Error;
};

// Malformed input file. Carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  std::size_t line_number;
};

}  // namespace litgraph
