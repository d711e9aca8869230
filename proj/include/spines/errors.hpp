#pragma once

#include <stdexcept>
#include <string>

namespace spines {

// Malformed or out-of-contract input: bad syntax, mismatched shapes,
// parameters outside their documented range.  CLI exit code 2.
struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// A checked mathematical property failed to hold: a boundary square is
// nonzero, a witness does not replay, an identity is violated.  CLI exit
// code 1.
struct CheckFailedError : std::runtime_error {
  explicit CheckFailedError(const std::string& what) : std::runtime_error(what) {}
};

// The question is well posed but outside what this implementation decides
// (typically: a property that is only semi-decidable over a nontrivial
// coefficient group and no witness was supplied).  CLI exit code 2.
struct UndecidedError : InvalidInputError {
  explicit UndecidedError(const std::string& what) : InvalidInputError(what) {}
};

// Text input rejected by a parser; records the 1-based position.
struct ParseError : InvalidInputError {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what)
      : InvalidInputError("parse error at line " + std::to_string(line_) + ", column " +
                          std::to_string(column_) + ": " + what),
        line(line_),
        column(column_) {}
};

}  // namespace spines
