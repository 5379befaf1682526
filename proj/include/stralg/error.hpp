#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stralg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(locate(message, line, column)),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string locate(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Input is well-formed but outside the domain of the requested operation
/// (not a string algebra, not a generalized string, property refusal).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// compose() on paths whose endpoints do not meet.
class NotComposableError : public Error {
 public:
  using Error::Error;
};

/// A consistency check inside the library failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// The membership characterization and the resolution engine disagree.
class TheoremViolation : public Error {
 public:
  TheoremViolation(const std::string& message, std::string dump)
      : Error(message), dump_(std::move(dump)) {}

  const std::string& dump() const { return dump_; }

 private:
  std::string dump_;
};

}  // namespace stralg
