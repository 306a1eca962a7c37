#pragma once

#include <stdexcept>
#include <string>

namespace mhd {

/// A Krylov or mass solve did not reach its tolerance.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on data that violates its precondition (e.g. a field that is not
/// divergence free).
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time step could not be completed (Picard or inner solver failure).
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace mhd
