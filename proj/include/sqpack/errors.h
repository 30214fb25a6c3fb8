#pragma once

#include <stdexcept>
#include <string>

namespace sqpack {

// Malformed text input (instance/packing files, rationals).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact search ran past its node/time/configuration budget. Never
// silently replaced by an approximate answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The strict-mode PTAS would have to enumerate an astronomically large
// configuration space.
class StrictModeInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant that the algorithm guarantees did not hold.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sqpack
