#pragma once

#include <stdexcept>
#include <string>

namespace oddsym {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
 public:
  ChartMismatch(const std::string& a, const std::string& b)
      : Error("chart mismatch: '" + a + "' vs '" + b + "'") {}
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NoExactSquareRoot : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class UnknownIndex : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parse failure with a 1-based position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace oddsym
