#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace duality {

/// Bad input or violated precondition. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fock cutoff too small for the requested state or operation.
class TruncationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// File could not be read or written. Exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number. Exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace duality
