#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpobench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required CSV column is missing or the header is malformed.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A single CSV cell failed to parse; carries the 1-based file line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InsufficientHistoryError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class StatsInputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpobench
