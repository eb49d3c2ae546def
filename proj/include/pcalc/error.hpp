#pragma once

#include <stdexcept>
#include <string>

namespace pcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or document input (exit code 2 in the CLI).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated by its arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical tracking failed (Newton divergence, singular Jacobian).
class TrackingError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcalc
