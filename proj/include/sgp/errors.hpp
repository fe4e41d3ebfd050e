#pragma once

#include <stdexcept>
#include <string>

namespace sgp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or malformed input data (gradients, images, starting points).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An algorithm parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Backtracking exhausted its budget; usually a broken gradient oracle.
class LineSearchFailure : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the function's domain (e.g. negative intensities).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bracketing could not straddle the discrepancy target.
class NoRootError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgp
