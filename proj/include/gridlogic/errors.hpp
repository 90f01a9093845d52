#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridlogic {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A clue or answer mentions an attribute, value, or house the background does not have.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (solver cap, generator sizes, catalog bounds, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration refused because the search space is too large.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// Randomized runs of the same puzzle disagreed on status or solution.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A clue variant has no rendering template for an attribute.
class TemplateError : public Error {
 public:
  using Error::Error;
};

// Structured data (dataset line, puzzle file, response body) does not match its schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  // 1-based line number, 0 when not line-oriented.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Chat endpoint unreachable or kept failing after the retry budget was spent.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridlogic
