#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sarf {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed interchange input. Carries the 1-based line number (0 when the
/// error is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied outside its domain (mismatched universes,
/// edgeless graphs, oversized brute-force requests, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace sarf
