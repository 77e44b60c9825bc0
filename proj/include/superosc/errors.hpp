#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superosc {

enum class ErrorKind {
  DuplicateTimes,
  TooManyPoints,
  NotPositiveDefinite,
  NoConvergence,
  NotConverged,
  DimensionMismatch,
  DegenerateFit,
  EmptyGridAfterZeroGuard,
  NonFiniteValue,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Process exit status used by the CLI for each error kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorKind::ParseError, message + " (line " + std::to_string(line) +
                                         ", column " + std::to_string(column) + ")"),
        reason_(message),
        line_(line),
        column_(column) {}

  /// Message without the location suffix.
  const std::string& reason() const noexcept { return reason_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string reason_;
  int line_;
  int column_;
};

}  // namespace superosc
