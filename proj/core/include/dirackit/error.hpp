#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirackit {

// Base class for all engine errors. Input problems (bad documents, malformed
// expressions, dimension mismatches) derive from this; they map to exit code 3
// in the command line driver.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax or name error while parsing a scalar expression. `pos` is the byte
// offset into the input where the problem was detected.
struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t pos_)
      : Error(what + " (at offset " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// Raised when evaluating a rational function at a point where a denominator
// vanishes. Callers that sample points catch this and draw a fresh point.
struct PoleError : Error {
  explicit PoleError(const std::string& what) : Error(what) {}
};

}  // namespace dirackit
