#pragma once

#include <stdexcept>
#include <cstdint>
#include <string>

namespace gw {

// Root of every error thrown by the library. Subclasses map onto the CLI
// exit contract: ConfigError -> 2, everything else -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// Gap in a numbered frame sequence.
class SequenceError : public Error {
 public:
  SequenceError(const std::string& what, long missing_index)
      : Error(what), missing_index_(missing_index) {}
  long missing_index() const noexcept { return missing_index_; }

 private:
  long missing_index_;
};

// Truncated raw stream payload.
class StreamError : public Error {
 public:
  StreamError(const std::string& what, std::uint64_t expected, std::uint64_t received)
      : Error(what), expected_(expected), received_(received) {}
  std::uint64_t expected() const noexcept { return expected_; }
  std::uint64_t received() const noexcept { return received_; }

 private:
  std::uint64_t expected_;
  std::uint64_t received_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Synthetic scene description that cannot be rendered.
class SpecError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gw
