#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/lp.hpp"

using namespace thermowiener;

TEST(Packing, ConstantMatrix) {
  const PackingSolution s = solve_packing(std::vector<double>(12, 1.0), 3, 4, 1e-9);
  EXPECT_NEAR(s.primal, 1.0, 1e-9);
  EXPECT_NEAR(s.dual, 1.0, 1e-9);
}

TEST(Packing, IdentityGivesDimension) {
  const int n = 7;
  std::vector<double> A(n * n, 0.0);
  for (int i = 0; i < n; ++i) A[i * n + i] = 1;
  const PackingSolution s = solve_packing(A, n, n, 1e-9);
  EXPECT_NEAR(s.primal, n, 1e-9);
  EXPECT_NEAR(s.dual, n, 1e-9);
}

TEST(Packing, ScaledEntries) {
  // max x1 + x2 s.t. 2 x1 + x2 <= 1, x1 + 3 x2 <= 1 -> (2/5, 1/5).
  const PackingSolution s = solve_packing({2, 1, 1, 3}, 2, 2, 1e-12);
  EXPECT_NEAR(s.primal, 0.6, 1e-12);
  EXPECT_NEAR(s.x[0], 0.4, 1e-12);
  EXPECT_NEAR(s.x[1], 0.2, 1e-12);
}

TEST(Packing, EmptyProblem) {
  const PackingSolution s = solve_packing({}, 0, 0, 1e-6);
  EXPECT_EQ(s.primal, 0.0);
  EXPECT_EQ(s.dual, 0.0);
}

TEST(Packing, RejectsBadInput) {
  EXPECT_THROW(solve_packing({1, -1}, 1, 2, 1e-6), InputError);
  EXPECT_THROW(solve_packing({1, 0, 1, 0}, 2, 2, 1e-6), InputError);
  EXPECT_THROW(solve_packing({1, std::numeric_limits<double>::quiet_NaN()}, 1, 2, 1e-6), InputError);
  EXPECT_THROW(solve_packing({1, 1, 1}, 2, 2, 1e-6), InputError);
}

TEST(PackingProperty, RandomInstancesCertifyGap) {
  twtest::Gen g(51);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = g.integer(1, 80), n = g.integer(1, 80);
    const std::vector<double> A = g.packing_matrix(m, n);
    const PackingSolution s = solve_packing(A, m, n, 1e-9);
    ASSERT_EQ(static_cast<int>(s.x.size()), n);
    ASSERT_EQ(static_cast<int>(s.y.size()), m);
    double px = 0, py = 0;
    for (int j = 0; j < n; ++j) {
      EXPECT_GE(s.x[j], 0.0);
      px += s.x[j];
    }
    for (int i = 0; i < m; ++i) {
      EXPECT_GE(s.y[i], 0.0);
      py += s.y[i];
      double row = 0;
      for (int j = 0; j < n; ++j) row += A[i * n + j] * s.x[j];
      EXPECT_LE(row, 1 + 1e-12) << "seed " << g.seed();
    }
    for (int j = 0; j < n; ++j) {
      double col = 0;
      for (int i = 0; i < m; ++i) col += A[i * n + j] * s.y[i];
      EXPECT_GE(col, 1 - 1e-12) << "seed " << g.seed();
    }
    EXPECT_NEAR(px, s.primal, 1e-12 * std::max(1.0, px));
    EXPECT_NEAR(py, s.dual, 1e-12 * std::max(1.0, py));
    EXPECT_LE(s.primal, s.dual * (1 + 1e-12));
    EXPECT_LE(s.dual - s.primal, 1e-6 * s.primal) << "m " << m << " n " << n;
  }
}
