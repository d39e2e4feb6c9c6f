#pragma once

#include <stdexcept>
#include <string>

namespace daa {

// Bad input: malformed instance, bid outside its space, violated precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An invariant the algorithms rely on was observed broken. Always a bug in a
// scorer, picker or subroutine, never a user error.
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A scorer reported a lower score for a higher bid.
class MonotonicityViolation : public InternalFault {
 public:
  using InternalFault::InternalFault;
};

// Exhaustive enumeration refused because it would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace daa
