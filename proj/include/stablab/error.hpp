#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a 0-based character offset into the
/// offending text (or line for file-level errors).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A precondition on arguments was violated (bad index, dimension mismatch,
/// parameter out of range, non-homogeneous relator, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: no convergence, inconsistent result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The determinant curve passes through (or numerically touches) zero, so
/// its winding number is undefined.
class CurveTouchesZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace stablab
