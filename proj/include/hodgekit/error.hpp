// Error types shared across the library.
//
// Three failure families, mirrored by the CLI exit codes:
//  - ParseError:        malformed input files / schema violations
//  - PreconditionError: structurally valid input that violates an op's
//                       preconditions (dimension mismatches, non-commuting
//                       cone generators, ...)
//  - InternalError:     "should not happen" states; always a library bug
#pragma once

#include <stdexcept>
#include <string>

namespace hodgekit {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace hodgekit
