// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_ERRORS_HPP
#define TEMPOGRAPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempograph {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input row. `line()` is 1-based and counts the header row.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Timestamps going backwards.
class OrderingError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Inconsistent feature arity or bad file layout (checkpoint names/shapes).
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch inside a tensor op; the message names the op.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Ranking metric requested on a label set without both classes.
class MetricError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A named dataset could not be located on disk.
class DatasetNotFound : public Error {
 public:
  using Error::Error;
};

/// A checkpoint is missing or does not fit the model.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_ERRORS_HPP
