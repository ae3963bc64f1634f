#pragma once

#include <stdexcept>
#include <string>

namespace thermowiener {

// Raised for malformed or out-of-contract inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iterative solver exhausts its budget. Carries the best
// certified primal/dual pair found so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_primal, double best_dual)
      : std::runtime_error(what), best_primal_(best_primal), best_dual_(best_dual) {}
  double best_primal() const { return best_primal_; }
  double best_dual() const { return best_dual_; }

 private:
  double best_primal_;
  double best_dual_;
};

}  // namespace thermowiener
