#pragma once

#include <stdexcept>
#include <string>

namespace calcverify {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request outside what an operation supports (rule size, iteration
// count, Vandermonde cap).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// An argument violates the operation's domain: empty interval, zero
// direction, non-finite angle, undefined arithmetic in an expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The computation itself broke down: non-finite function value, failed
// Newton iteration, singular linear system.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace calcverify
