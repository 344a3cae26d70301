// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace noise_sieve {

// Base for every error caused by bad user input (data, config, flags). The CLI
// maps these to exit code 2; anything else escaping is an internal failure.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public InputError {
 public:
  SchemaError(const std::string& what, std::optional<std::size_t> row = std::nullopt,
              std::string field = {})
      : InputError(what), row_(row), field_(std::move(field)) {}

  std::optional<std::size_t> row() const { return row_; }
  const std::string& field() const { return field_; }

 private:
  std::optional<std::size_t> row_;
  std::string field_;
};

class EmptyDatasetError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownNameError : public InputError {
 public:
  using InputError::InputError;
};

// Parse failure in a text input; line numbers are 1-based and count the header.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::string source = {})
      : InputError(format(message, line, source)), message_(message), line_(line), source_(std::move(source)) {}

  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }
  const std::string& source() const { return source_; }

  ParseError with_source(std::string source) const { return ParseError(message_, line_, std::move(source)); }

 private:
  static std::string format(const std::string& message, std::size_t line, const std::string& source) {
    if (source.empty()) return "line " + std::to_string(line) + ": " + message;
    return source + ":" + std::to_string(line) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::string source_;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace noise_sieve
