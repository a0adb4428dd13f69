#pragma once

#include <stdexcept>
#include <string>

namespace pairbell {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied input (ranges, dimensions, malformed specs).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IndexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Root finding was asked to bisect an interval without a sign change.
class BracketError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A mathematical precondition on an operator or vector was violated
// (non-Hermitian observable, non-unit direction, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairbell
