#pragma once

#include <stdexcept>
#include <string>

namespace rlnc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad field descriptor, dimension
/// mismatch, rate of the wrong length, unknown node, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A request that is well formed but exceeds an enumeration guard.
class GuardExceeded : public Error {
 public:
  GuardExceeded(const std::string& what, double requested, double limit)
      : Error(what), requested_(requested), limit_(limit) {}

  double requested() const noexcept { return requested_; }
  double limit() const noexcept { return limit_; }

 private:
  double requested_;
  double limit_;
};

}  // namespace rlnc
