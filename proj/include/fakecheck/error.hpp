// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fakecheck {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A malformed input line. `line` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error(format(line, field, what)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(std::size_t line, const std::string& field,
                            const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field `" + field + "`: ";
    return out + what;
  }

  std::size_t line_;
  std::string field_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A feature family was requested but its inputs are not available.
class FamilyUnavailableError : public Error {
 public:
  using Error::Error;
};

class LayoutMismatchError : public Error {
 public:
  using Error::Error;
};

class CorruptFileError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

}  // namespace fakecheck
