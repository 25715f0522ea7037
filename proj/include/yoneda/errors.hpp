#pragma once

#include <stdexcept>
#include <string>

namespace yoneda {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed operands of incompatible shapes or endpoints.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A value failed its construction-time validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IllDefined : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotMono : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotEpi : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotExact : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotFree : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Group, poset or functor axiom violated; the message names the witness.
class LawViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Request outside what the engine computes (degree caps, out-of-range indices).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A postcondition the construction guarantees did not hold.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace yoneda
