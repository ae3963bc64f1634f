#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/kernel.hpp"
#include "thermowiener/numerics.hpp"

using namespace thermowiener;

TEST(GaussianKernel, FormulaExamples) {
  const GaussianKernel g1(MetricSpace::euclidean(1), 0.3);
  EXPECT_NEAR(g1({{0.4}, 1.0}, {{0.4}, 0.0}), 0.5, 1e-15);
  const GaussianKernel g2(MetricSpace::euclidean(2), 0.25);
  EXPECT_NEAR(g2({{1.0, 0.0}, 1.0}, {{0.0, 0.0}, 0.0}), std::exp(-0.25) / std::numbers::pi, 1e-15);
  EXPECT_NEAR(g2({{1.0, 0.0}, 1.0}, {{0.0, 0.0}, 0.0}), 0.247900, 1e-6);
}

TEST(GaussianKernel, VanishesWhenNotForward) {
  const GaussianKernel g(MetricSpace::euclidean(1), 0.25);
  EXPECT_EQ(g({{0.0}, 0.0}, {{0.0}, 0.0}), 0.0);
  EXPECT_EQ(g({{0.0}, -1.0}, {{0.0}, 0.0}), 0.0);
  // Times an ulp apart count as simultaneous.
  const double t = -0.04375;
  EXPECT_EQ(g({{0.0}, std::nextafter(t, 1.0)}, {{0.0}, t}), 0.0);
}

TEST(GaussianKernel, UnderflowFlushesToZero) {
  const GaussianKernel g(MetricSpace::euclidean(1), 1.0);
  EXPECT_EQ(g({{30.0}, 1e-3}, {{0.0}, 0.0}), 0.0);
}

TEST(GaussianKernel, RejectsBadExponent) {
  EXPECT_THROW(GaussianKernel(MetricSpace::euclidean(1), 0.0), InputError);
  EXPECT_THROW(GaussianKernel(MetricSpace::euclidean(1), -1.0), InputError);
}

TEST(HeatKernel, FormulaExamples) {
  EXPECT_NEAR(HeatKernel(1, 1.0)({{0.0}, 1.0}, {{0.0}, 0.0}), 1 / std::sqrt(4 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(HeatKernel(1, 4.0)({{0.0}, 1.0}, {{0.0}, 0.0}), 1 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_EQ(HeatKernel(2, 1.0)({{0.0, 0.0}, 0.0}, {{0.0, 0.0}, 1.0}), 0.0);
}

TEST(HeatKernel, SpatialIntegralIsOne) {
  const auto [x, w] = gauss_legendre(200);
  for (double beta : {0.5, 1.0, 4.0}) {
    for (double dt : {0.01, 0.3, 2.0}) {
      const HeatKernel k(1, beta);
      const double half = 12 * std::sqrt(dt / beta);
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += half * w[i] * k({{half * x[i]}, dt}, {{0.0}, 0.0});
      EXPECT_NEAR(s, 1.0, 1e-10) << "beta " << beta << " dt " << dt;
    }
  }
}

TEST(HeatKernel, GaussianRatioIsConstant) {
  twtest::Gen g(21);
  for (int n = 1; n <= 3; ++n) {
    const double beta = g.uniform(0.5, 4);
    const HeatKernel heat(n, beta);
    const GaussianKernel gauss(MetricSpace::euclidean(n), beta / 4);
    for (int i = 0; i < 50; ++i) {
      const SpaceTimePoint z = g.space_time(n, 1, 0.1, 1), w = g.space_time(n, 1, -1, 0);
      const double ratio = heat(z, w) / gauss(z, w);
      if (std::isfinite(ratio) && gauss(z, w) > 1e-200) EXPECT_NEAR(ratio, heat.gaussian_ratio(), 1e-9 * ratio);
    }
  }
}

TEST(Bounds, StructuralConstant) {
  EXPECT_DOUBLE_EQ(structural_constant({1, 0.25, 0.25, 2}), 7.25);
  EXPECT_DOUBLE_EQ(structural_constant({1, 1, 1, 2}), 5.0);
  EXPECT_DOUBLE_EQ(structural_constant({2, 0.125, 0.5, 4}), 14.5);
  EXPECT_THROW(structural_constant({0, 1, 1, 2}), InputError);
}

TEST(KernelProperty, LargerExponentIsSmaller) {
  twtest::Gen g(22);
  const MetricSpace m = MetricSpace::euclidean(2);
  for (int i = 0; i < 300; ++i) {
    const double a = g.uniform(0.05, 1), a2 = a * g.uniform(1, 3);
    const SpaceTimePoint z = g.space_time(2, 1, 0, 1), w = g.space_time(2, 1, -1, 0);
    EXPECT_LE(GaussianKernel(m, a2)(z, w), GaussianKernel(m, a)(z, w) * (1 + 1e-14));
  }
}

TEST(KernelProperty, TranslationInvariant) {
  twtest::Gen g(23);
  const MetricSpace h = MetricSpace::heisenberg();
  const Kernel k = Kernel::gaussian(h, 0.25);
  for (int i = 0; i < 100; ++i) {
    const SpacePoint a = g.point(3, 1);
    const SpaceTimePoint z = g.space_time(3, 0.5, 0.1, 1), w = g.space_time(3, 0.5, -1, 0);
    const double s = g.uniform(-1, 1);
    const double moved = k({h.translate(a, z.x), z.t + s}, {h.translate(a, w.x), w.t + s});
    EXPECT_NEAR(moved, k(z, w), 1e-10 * std::max(1.0, k(z, w)));
  }
}
