#pragma once

#include <stdexcept>

namespace spectrum_split {

// Iterative procedure failed to reach its target: bisection bracket or
// iteration budget exhausted, or a truncated sum whose tail bound cannot be
// certified. Maps to CLI exit code 3, as opposed to input validation errors
// (std::invalid_argument, std::domain_error, std::overflow_error) which map
// to exit code 2.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spectrum_split
