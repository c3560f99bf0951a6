#pragma once

#include <stdexcept>
#include <string>

namespace monodromy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or a request the library refuses to run (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// A mathematical guarantee failed to hold; always an implementation bug
// (CLI exit code 3).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class NotLaurent : public Error {
 public:
  using Error::Error;
};

class InvalidArity : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedField : public InputError {
 public:
  using InputError::InputError;
};

class BudgetExceeded : public InputError {
 public:
  using InputError::InputError;
};

class ClosureBudgetExceeded : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionViolated : public InputError {
 public:
  using InputError::InputError;
};

class IntegralityViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class DegreeViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class MonicViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NonIntegerCoefficient : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace monodromy
