#pragma once

#include <vector>

namespace thermowiener {

struct PackingSolution {
  std::vector<double> x;  // primal, length n
  std::vector<double> y;  // dual, length m
  double primal = 0.0;    // sum x, after scaling x to feasibility
  double dual = 0.0;      // sum y, after scaling y to feasibility
  int iterations = 0;
  double max_row_activity = 0.0;  // max (A x)_i of the reported x
};

// max 1'x s.t. A x <= 1, x >= 0 and the covering dual min 1'y s.t.
// A'y >= 1, y >= 0, for a nonnegative row-major m x n matrix A. Both
// reported vectors are feasible, so primal <= dual.
//
// Throws InputError for negative or non-finite entries and for all-zero
// columns (unbounded primal). Throws ConvergenceError when the relative gap
// stays above tolerance after max_iterations pivots (0 picks a default).
PackingSolution solve_packing(const std::vector<double>& A, int m, int n, double tolerance,
                              int max_iterations = 0);

}  // namespace thermowiener
