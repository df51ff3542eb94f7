#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phkg {

/// Base class for every error raised by the library. Callers that only care
/// about "something in the input was wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (Turtle, SPARQL, rule documents, food logs).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A prefixed name whose prefix was never declared.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid value (literal subject, lower > upper, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Not enough data points to compute a statistic or mine a pattern.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Numerically meaningless statistic, e.g. a coefficient of variation with
/// zero mean.
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

/// Input that violates a cross-field consistency rule (zero-calorie day with
/// macros, day classified both low- and high-carb, conflicting constraints).
class DataInconsistency : public Error {
 public:
  using Error::Error;
};

/// Construct recognised but outside the supported fragment.
class UnsupportedFeature : public Error {
 public:
  using Error::Error;
};

/// Operation called without its precondition holding.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace phkg
