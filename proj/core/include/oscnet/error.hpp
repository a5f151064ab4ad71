#pragma once

#include <stdexcept>

namespace oscnet {

// Raised when a linear-algebra step cannot produce a trustworthy result
// (failed eigensolve, symplectic invariants violated beyond tolerance).
// Argument problems are reported with std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscnet
