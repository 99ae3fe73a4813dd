#pragma once

#include <stdexcept>
#include <string>

namespace gframes {

// All library failures derive from Error so callers can catch once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class NotTight : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateSpec : public Error {
 public:
  using Error::Error;
};

class BadRange : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised when two routes that must agree mathematically disagree numerically.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace gframes
