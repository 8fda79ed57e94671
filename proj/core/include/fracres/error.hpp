#pragma once

#include <stdexcept>
#include <string>

namespace fracres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. gamma(-1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data: shapes, non-finite entries, grids.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested discrete operator.
class GridError : public InputError {
 public:
  using InputError::InputError;
};

/// The boundary operator has a trivial kernel, so the resonant scheme does not apply.
class NonResonantError : public Error {
 public:
  using Error::Error;
};

/// The right-hand side returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, int node)
      : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}

  int node() const noexcept { return node_; }

 private:
  int node_;
};

/// The a priori bound estimator could not certify boundedness.
class NoBoundError : public Error {
 public:
  using Error::Error;
};

/// Configuration or matrix file could not be parsed.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace fracres
