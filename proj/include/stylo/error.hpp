#pragma once

#include <stdexcept>
#include <string>

namespace stylo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad files, violated preconditions.
/// The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A model file failed integrity checks (schema version, checksum, truncation).
class ModelFormatError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical failure inside an otherwise valid computation (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stylo
