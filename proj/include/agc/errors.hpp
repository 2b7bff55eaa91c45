#pragma once

#include <stdexcept>
#include <string>

namespace agc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands; the message names both shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value where a finite one is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The simplex solver exhausted its pivot budget.
class SolverStalled : public Error {
 public:
  using Error::Error;
};

/// Fourier-Motzkin elimination exceeded the intermediate row guard.
class FmRowLimitError : public Error {
 public:
  using Error::Error;
};

/// Model file could not be parsed or is semantically malformed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace agc
