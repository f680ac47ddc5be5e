#pragma once

#include <stdexcept>
#include <string>

namespace linetess {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parallel or collinear configuration; the caller is expected to skip it.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PointOnLineError : public Error {
 public:
  using Error::Error;
};

/// Sampling disc too small for the requested observation window.
class InsufficientWindowError : public Error {
 public:
  using Error::Error;
};

/// Fewer qualifying records than the requested order statistic.
class NotEnoughRecordsError : public Error {
 public:
  using Error::Error;
};

class EmptySampleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace linetess
