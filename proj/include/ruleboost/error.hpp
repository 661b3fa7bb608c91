#pragma once

#include <stdexcept>
#include <string>

namespace ruleboost {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain user data. The CLI maps it to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Contradictory or invalid configuration. Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A measure (confidence, lift, ratio, ACB, PIC) that has no value for the
// given arguments, e.g. a zero-support antecedent.
class UndefinedMeasureError : public Error {
 public:
  using Error::Error;
};

// An internal invariant did not hold. Exit code 3.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ruleboost
