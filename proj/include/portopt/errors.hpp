#pragma once

#include <stdexcept>
#include <string>

namespace portopt {

// Caller-supplied data violates a documented precondition (bad ids, sizes, ranges).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A guard on problem size was exceeded; the message names the guard and, where
// one exists, the fallback the caller should use instead.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Indicates a bug in this library, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace portopt
