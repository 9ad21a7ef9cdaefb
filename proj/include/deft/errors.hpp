#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deft {

/// Bad input data: malformed files, mismatched lengths, unknown tags.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line of a token file could not be parsed.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A tag string that is not part of the active schema.
class SchemaError : public DataError {
 public:
  SchemaError(std::string tag, std::size_t line)
      : DataError("line " + std::to_string(line) + ": unknown tag '" + tag + "'"),
        tag_(std::move(tag)),
        line_(line) {}

  const std::string& tag() const noexcept { return tag_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string tag_;
  std::size_t line_;
};

/// Invalid options or hyperparameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Transient network failure; the caller may retry.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deft
