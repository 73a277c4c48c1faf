#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcssk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid static configuration (non-integer sample counts, bad ranges).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Chirp bandwidth at or above Nyquist.
class AliasingError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Bit or sample count that does not divide into whole symbols.
class FramingError : public Error {
 public:
  using Error::Error;
};

/// Received octet is not a codeword.
class CodeViolation : public Error {
 public:
  CodeViolation(const std::string& what, std::size_t block)
      : Error(what), block_index_(block) {}
  std::size_t block_index() const noexcept { return block_index_; }

 private:
  std::size_t block_index_;
};

/// Phase is undefined (zero-magnitude sample).
class SignalError : public Error {
 public:
  using Error::Error;
};

/// No beat peak stands out of the noise floor.
class SyncFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed binary input (truncated cf32 file).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; position is reported 1-based for line/column and
/// 0-based for the byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, std::size_t offset)
      : Error(what), line_(line), column_(column), offset_(offset) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
};

}  // namespace fcssk
