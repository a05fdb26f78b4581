#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bigs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// No feasible BIG representation exists (empty ancestor set, infinite
/// observation diameter, ambiguous edge grid, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An estimator input violates its defining constraint, e.g. weights of a
/// motif that do not sum to one.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration refused because the design support is too large.
class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace bigs
