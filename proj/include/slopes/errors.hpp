#pragma once

#include <stdexcept>
#include <string>

namespace slopes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-field ring where a field is needed,
/// unparsable definition files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked for on a ring that does not support it.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A lemma's hypothesis window was violated by the caller.
class HypothesisError : public InputError {
 public:
  using InputError::InputError;
};

/// A scan or closure would exceed the configured item cap.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

/// A slope is infinite (alpha = 0) where a finite one is required.
class InfiniteSlope : public Error {
 public:
  using Error::Error;
};

/// A verified identity or inequality did not hold.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Fixed-width arithmetic would overflow.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace slopes
