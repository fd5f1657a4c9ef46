#pragma once

#include <stdexcept>
#include <string>

namespace lowrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition or hypothesis of an operation does not hold
/// (size guards, degenerate inputs, violated measure assumptions).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. The message carries a line/column location.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowrank
