#pragma once

#include <stdexcept>
#include <string>

namespace rgs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: probability tables, JSON schema, dimensions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// API misuse, e.g. asking for q-bar on a spec that fails HB'.
class UsageError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A structural hypothesis (HA' / HB') does not hold.
class HypothesisError : public UsageError {
 public:
  using UsageError::UsageError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Depth / size guards.
class GuardError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void fail_validation(const std::string& what);
[[noreturn]] void fail_precondition(const std::string& what);

}  // namespace rgs
