#pragma once

#include <stdexcept>
#include <string>

namespace ccg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A builder or operation was called outside its documented parameter range.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search would exceed the configured budget.
struct SearchTooLarge : Error {
  using Error::Error;
};

// A cascade move needs more groups of some size than the live partition has.
struct InsufficientGroups : Error {
  using Error::Error;
};

struct NotAchievable : Error {
  using Error::Error;
};

// Malformed input file; the message names the offending field.
struct InputError : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace ccg
