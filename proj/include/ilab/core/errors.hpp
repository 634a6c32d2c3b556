#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilab {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad index, bad file, bad argument value.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds a fixed size limit (variable count, LP size, register dimension).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; the computed value must not be trusted.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The LP solver hit its iteration cap or could not certify its answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a function expression. Offsets are 0-based bytes, line/column 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t offset, std::size_t line, std::size_t column,
             std::vector<std::string> expected);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace ilab
