#pragma once

#include <stdexcept>
#include <string>

namespace kerrcat {

// Bad input: out-of-range parameters, malformed times, tail violations.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation ran but its own consistency check failed (e.g. a clipped
// integration window).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kerrcat
