#pragma once

#include <stdexcept>
#include <string>

namespace valconv {

// Malformed or inconsistent input (bad JSON, wrong space tag, grade mismatch).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degree bookkeeping violated (e.g. convolution degree underflow).
class DegreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact linear solver found no solution in the requested window.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A form or valuation fails a structural precondition.
class InvalidValuation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace valconv
