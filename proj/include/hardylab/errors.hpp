#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

// Bad input: violated preconditions, out-of-range parameters, malformed files.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics failed on valid input (bracket failure, non-convergence, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace hardylab
