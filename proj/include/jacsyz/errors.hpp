#pragma once

#include <stdexcept>
#include <string>

namespace jacsyz {

// Bad or unsupported input: syntax, non-homogeneous polynomial, a supplied
// point that is not singular, a failed precondition chosen by the caller.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed quantity contradicts an identity that must hold. Always a bug
// in this library, never a property of the input.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jacsyz
