#pragma once

#include <stdexcept>
#include <string>

namespace sgflow {

/// Raised when the time integrator produces a non-finite coefficient.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative solver exhausts its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver invariant was violated (e.g. a monotone iteration went up).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sgflow
