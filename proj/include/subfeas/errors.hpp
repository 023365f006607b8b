#pragma once

#include <stdexcept>
#include <string>

namespace subfeas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors or oracles of incompatible dimension were combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An explicit step-size list ran out and no tail rule was declared.
class ScheduleExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (problem file, CSV, schedule string, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace subfeas
