#pragma once

#include <stdexcept>
#include <string>

namespace dpbulk {

/// Bad input: violated precondition, malformed file, unknown key.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical guard tripped (truncation leakage, step control gave up).
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpbulk
