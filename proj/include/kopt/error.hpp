#pragma once

#include <stdexcept>
#include <string>

namespace kopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class NonSimplePolygon : public Error {
 public:
  using Error::Error;
};

// Raised when an intermediate result contradicts an invariant that upstream
// stages are supposed to guarantee.
class InternalError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace kopt
