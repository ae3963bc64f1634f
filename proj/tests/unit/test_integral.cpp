#include <gtest/gtest.h>

#include <cmath>

#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/kernel.hpp"
#include "thermowiener/wiener.hpp"

using namespace thermowiener;

TEST(InnerIntegral, HalfspaceMatchesGammaValue) {
  // Section ratio sqrt(log rho), so the inner integral is Gamma(3/2) / b^(3/2).
  const DomainSpec d = find_benchmark("halfspace-time").make();
  for (double b : {0.5, 1.0}) {
    const double exact = std::tgamma(1.5) / std::pow(b, 1.5);
    EXPECT_NEAR(inner_integral(d, 0.25, b, 1e-3, QuadratureSpec{}), exact, 0.01 * exact) << "b " << b;
  }
}

TEST(InnerIntegral, VanishesWithoutComplement) {
  // Below the cylinder top nothing with |u| < 0.4 is excluded.
  const DomainSpec d = find_benchmark("cylinder-top").make();
  QuadratureSpec q;
  q.u_max = 10;
  EXPECT_EQ(inner_integral(d, 0.25, 0.5, 1e-3, q), 0.0);
}

TEST(InnerIntegral, RejectsBadArguments) {
  const DomainSpec d = find_benchmark("halfspace-time").make();
  EXPECT_THROW(inner_integral(d, 0.25, 0.5, 0.5, QuadratureSpec{}), InputError);
  EXPECT_THROW(inner_integral(d, 1.5, 0.5, 0.01, QuadratureSpec{}), InputError);
  QuadratureSpec q;
  q.inner_nodes = 1;
  EXPECT_THROW(inner_integral(d, 0.25, 0.5, 0.01, q), InputError);
}

TEST(IntegralTest, ConeGrowsTowardBoundaryPoint) {
  const DomainSpec d = find_benchmark("cone").make();
  std::vector<SpaceTimePoint> probes;
  for (int j = 1; j <= 6; ++j) {
    const double dist = std::pow(2.0, -j - 1);
    probes.push_back({SpacePoint{0.0}, dist * dist});
  }
  QuadratureSpec q;
  q.resolution = 6;
  const IntegralReport r = integral_test(d, 0.25, 0.5, probes, q);
  ASSERT_EQ(r.probes.size(), probes.size());
  for (std::size_t i = 1; i < r.probes.size(); ++i) EXPECT_GT(r.probes[i].M, r.probes[i - 1].M);
  EXPECT_GT(r.slope, 0.0);
  EXPECT_GT(r.section_evaluations, 0);
}

TEST(WienerFunction, BoundedByGeometricSum) {
  const DomainSpec d = find_benchmark("halfspace-time").make();
  const Kernel k = surrogate_kernel(d.metric(), 1.0, 0.25, 1.0);
  std::vector<SpaceTimePoint> probes;
  for (int j = 1; j <= 5; ++j) probes.push_back({SpacePoint{0.0}, std::pow(4.0, -j)});
  const double rho = 0.3;
  const int L = 6;
  const WienerFunctionEstimate w = wiener_function(d, k, 0.25, rho, L, probes, 3);
  const double geometric = rho * (1 - std::pow(rho, L)) / (1 - rho);
  for (double v : w.W) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, geometric * (1 + 1e-12));
  }
  EXPECT_NEAR(w.truncation_bound, std::pow(rho, L + 1) / (1 - rho), 1e-15);
  // Closer probes see a larger potential, so W decreases toward z0.
  for (std::size_t i = 1; i < w.W.size(); ++i) EXPECT_LT(w.W[i], w.W[i - 1]);
}

TEST(BoundFromPairs, SyntheticCases) {
  const BoundCheckReport a = bound_from_pairs({0, 1, 2}, {1, std::exp(-1.0), std::exp(-2.0)});
  EXPECT_NEAR(a.C, 1.0, 1e-9);
  EXPECT_TRUE(a.holds);
  EXPECT_NEAR(a.spearman, -1.0, 1e-12);
  const BoundCheckReport b = bound_from_pairs({0, 0}, {3, 0.5});
  EXPECT_NEAR(b.C, 3.0, 1e-9);
  EXPECT_THROW(bound_from_pairs({1}, {1, 2}), InputError);
  EXPECT_THROW(bound_from_pairs({-1}, {1}), InputError);
}
