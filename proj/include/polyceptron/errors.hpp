#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyceptron {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input values, bad labels, invalid configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// Text-format parse failure. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Random instance generation could not satisfy its constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// The requested enumeration exceeds the oracle's budget. This is not a
// "not separable" answer.
class InfeasibleRequest : public Error {
 public:
  using Error::Error;
};

// Cross-validation produced a training split missing one of the classes.
class StratificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyceptron
