#pragma once

#include <stdexcept>
#include <string>

namespace p2r {

// Root of every error raised by the library. Derived types let callers (the
// CLI in particular) distinguish bad input from failed verification.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct ConductorError : InputError {
  using InputError::InputError;
};

struct ConstraintError : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct NotFiniteOrder : Error {
  using Error::Error;
};

struct GroupTooLarge : Error {
  using Error::Error;
};

struct OrbitTooLarge : Error {
  using Error::Error;
};

struct NotInvariant : Error {
  using Error::Error;
};

struct MethodInapplicable : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace p2r
