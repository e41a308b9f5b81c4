#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlf {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter range.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Non-uniform or non-monotone time column.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Structural mismatch: missing/ragged columns, unknown signals, dimension clashes.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or unparseable numeric value.
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Input outside the environment's input box.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A formula needs more samples than the trace provides.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Temporal bound with lower > upper.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Malformed STL text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Transport or protocol failure while talking to an external environment.
class BridgeError : public Error {
 public:
  using Error::Error;
};

/// Configuration validation failure; carries every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration:";
    for (const auto& item : items) out += "\n  - " + item;
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace stlf
