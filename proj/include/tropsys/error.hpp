#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropsys {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (matrix/vector sizes, row counts).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied outside its domain, e.g. PosInf + NegInf or the
/// conjugate of a matrix with -inf entries.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tropsys
