#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptslcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonPositiveInput : public Error {
 public:
  using Error::Error;
};

/// Raised when a lifted point has a nonpositive residual. `index()` is the
/// residual slot (0 = the v0 - x^T s slot, i >= 1 = x_i s_i - v_i^2).
class NotInteriorPoint : public Error {
 public:
  NotInteriorPoint(std::size_t index, double value)
      : Error("not an interior point: r_" + std::to_string(index) + " = " +
              std::to_string(value)),
        index_(index),
        value_(value) {}

  std::size_t index() const { return index_; }
  double value() const { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SingularNewtonMatrix : public Error {
 public:
  using Error::Error;
};

class StalledPredictor : public Error {
 public:
  using Error::Error;
};

class StalledCorrector : public Error {
 public:
  using Error::Error;
};

class CorrectorBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SingularBlock : public Error {
 public:
  using Error::Error;
};

/// Raised in audit mode when a theoretical guarantee is violated at runtime.
class AuditViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ptslcp
