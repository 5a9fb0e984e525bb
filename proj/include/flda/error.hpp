#pragma once

#include <stdexcept>
#include <string>

namespace flda {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight vector is not a usable distribution (negative mass, zero total).
class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (u out of range, bad index,
/// zero iterations, ...).
class ContractViolationError : public Error {
 public:
  using Error::Error;
};

/// Internal sufficient statistics went inconsistent (count underflow, token
/// census mismatch). Always a bug, never recoverable.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that fails semantic checks (ids out of range, block
/// counts that do not add up).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Checkpoint could not be restored (bad magic, version, truncation).
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace flda
