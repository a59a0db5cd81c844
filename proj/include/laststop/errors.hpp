#pragma once

#include <stdexcept>
#include <string>

namespace laststop {

// Bad caller input: out-of-range probabilities, malformed files, empty inputs.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Computation left the representable/convergent regime (non-finite values,
// bisection brackets that never form, partitions too coarse to use).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace laststop
