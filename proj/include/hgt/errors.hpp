#pragma once

#include <stdexcept>
#include <string>

namespace hgt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: violated precondition, malformed file, infeasible parameters.
struct PreconditionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// The run contradicts the model: oracle answers inconsistent with every
// candidate, a certified guarantee violated, or adaptivity misuse.
struct InconsistencyError : Error {
  using Error::Error;
};

// A bounded loop (construction rounds, rejection sampling) ran out of budget.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace hgt
