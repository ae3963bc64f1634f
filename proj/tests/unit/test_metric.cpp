#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/metric.hpp"

using namespace thermowiener;

namespace {

// Koranyi ball indicator ((x^2 + y^2)^2 + 16 t^2 < 1) counted on a
// midpoint grid over [-1,1]^2 x [-1/4,1/4], which holds the ball.
double koranyi_grid_volume(int cells) {
  const double hx = 2.0 / cells, ht = 0.5 / cells;
  long hits = 0;
  for (int i = 0; i < cells; ++i) {
    const double x = -1 + (i + 0.5) * hx;
    for (int j = 0; j < cells; ++j) {
      const double y = -1 + (j + 0.5) * hx;
      const double r2 = x * x + y * y;
      if (r2 >= 1) continue;
      for (int k = 0; k < cells; ++k) {
        const double t = -0.25 + (k + 0.5) * ht;
        if (r2 * r2 + 16 * t * t < 1) ++hits;
      }
    }
  }
  return hits * hx * hx * ht;
}

}  // namespace

TEST(Metric, EuclideanDistance) {
  const MetricSpace m = MetricSpace::euclidean(2);
  EXPECT_DOUBLE_EQ(m.dist({0.0, 0.0}, {3.0, 4.0}), 5.0);
  EXPECT_EQ(m.dist({1.5, -2.0}, {1.5, -2.0}), 0.0);
}

TEST(Metric, HeisenbergGaugeOnAxis) {
  const MetricSpace h = MetricSpace::heisenberg();
  EXPECT_NEAR(h.dist({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}), 1.0, 1e-15);
  // Pure vertical offset t: (16 t^2)^(1/4) = 2 sqrt(|t|).
  EXPECT_NEAR(h.dist({0.0, 0.0, 0.0}, {0.0, 0.0, 0.25}), 1.0, 1e-15);
  EXPECT_EQ(h.homogeneous_dimension(), 4.0);
  EXPECT_EQ(h.doubling_constant(), 16.0);
}

TEST(Metric, DimensionMismatchThrows) {
  const MetricSpace m = MetricSpace::euclidean(2);
  EXPECT_THROW(m.dist({0.0}, {1.0, 2.0}), InputError);
  EXPECT_THROW(m.ball_volume({0.0, 0.0}, 0.0), InputError);
  EXPECT_THROW(m.ball_volume({0.0, 0.0}, -1.0), InputError);
}

TEST(Metric, BallVolumes) {
  EXPECT_NEAR(MetricSpace::euclidean(2).ball_volume({0.0, 0.0}, 1.0), std::numbers::pi, 1e-14);
  EXPECT_NEAR(MetricSpace::euclidean(1).ball_volume({0.0}, std::sqrt(1.0)), 2.0, 1e-15);
  EXPECT_NEAR(MetricSpace::euclidean(3).ball_volume({0.0, 0.0, 0.0}, 2.0), 4.0 / 3.0 * std::numbers::pi * 8, 1e-12);
}

TEST(Metric, KoranyiVolumeMatchesGridOracle) {
  // Richardson on the boundary-layer error, which is first order in h.
  const double v1 = koranyi_grid_volume(100), v2 = koranyi_grid_volume(200), v3 = koranyi_grid_volume(400);
  const double r12 = 2 * v2 - v1, r23 = 2 * v3 - v2;
  EXPECT_NEAR(r12, r23, 2e-3);
  const double kappa = koranyi_unit_ball_volume();
  EXPECT_NEAR(kappa, r23, 2e-3);
  EXPECT_NEAR(kappa, std::numbers::pi * std::numbers::pi / 8, 1e-9);
  EXPECT_NEAR(MetricSpace::heisenberg().ball_volume({0.3, -0.2, 0.1}, 0.5), kappa / 16, 1e-12);
}

TEST(Metric, ParabolicDistanceExamples) {
  const MetricSpace m = MetricSpace::euclidean(1);
  EXPECT_EQ(m.parabolic_dist({{0.3}, 0.1}, {{0.3}, 0.1}), 0.0);
  EXPECT_NEAR(m.parabolic_dist({{1.0}, 0.0}, {{0.0}, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(m.parabolic_dist({{0.0}, 4.0}, {{0.0}, 0.0}), 2.0, 1e-15);
  EXPECT_NEAR(m.parabolic_dist({{0.2}, -0.1}, {{0.0}, 0.0}), 0.328182, 1e-6);
}

TEST(MetricProperty, EuclideanDoublingIsExact) {
  twtest::Gen g(11);
  for (int n = 1; n <= 3; ++n) {
    const MetricSpace m = MetricSpace::euclidean(n);
    for (int i = 0; i < 200; ++i) {
      const SpacePoint x = g.point(n, 5);
      const double r = g.uniform(1e-3, 3);
      EXPECT_NEAR(m.ball_volume(x, 2 * r) / m.ball_volume(x, r), std::pow(2.0, n), 1e-12) << "seed " << g.seed();
    }
  }
}

TEST(MetricProperty, DoublingBoundedByConstant) {
  twtest::Gen g(12);
  for (const MetricSpace& m : {MetricSpace::euclidean(1), MetricSpace::euclidean(2), MetricSpace::heisenberg()}) {
    for (int i = 0; i < 1000; ++i) {
      const SpacePoint x = g.point(m.dim(), 2);
      const double r = g.uniform(1e-2, 2);
      EXPECT_LE(m.ball_volume(x, 2 * r) / m.ball_volume(x, r), m.doubling_constant() * (1 + 1e-12));
    }
  }
}

TEST(MetricProperty, AxiomsOnRandomTriples) {
  twtest::Gen g(13);
  for (const MetricSpace& m : {MetricSpace::euclidean(2), MetricSpace::euclidean(3), MetricSpace::heisenberg()}) {
    for (int i = 0; i < 500; ++i) {
      const SpacePoint x = g.point(m.dim(), 1), y = g.point(m.dim(), 1), z = g.point(m.dim(), 1);
      const double dxy = m.dist(x, y);
      EXPECT_GE(dxy, 0.0);
      EXPECT_NEAR(dxy, m.dist(y, x), 1e-12);
      EXPECT_LE(dxy, m.dist(x, z) + m.dist(z, y) + 1e-12);
    }
  }
}

TEST(MetricProperty, ParabolicQuasiTriangle) {
  twtest::Gen g(14);
  const double c = std::pow(2.0, 0.25);
  for (const MetricSpace& m : {MetricSpace::euclidean(1), MetricSpace::heisenberg()}) {
    for (int i = 0; i < 500; ++i) {
      const auto z = g.space_time(m.dim(), 1, -1, 1), u = g.space_time(m.dim(), 1, -1, 1),
                 w = g.space_time(m.dim(), 1, -1, 1);
      EXPECT_LE(m.parabolic_dist(z, w), c * (m.parabolic_dist(z, u) + m.parabolic_dist(u, w)) + 1e-12);
      EXPECT_NEAR(m.parabolic_dist(z, w), m.parabolic_dist(w, z), 1e-12);
    }
  }
}

TEST(MetricProperty, DilationIsHomogeneous) {
  twtest::Gen g(15);
  const MetricSpace h = MetricSpace::heisenberg();
  for (int i = 0; i < 200; ++i) {
    const SpacePoint u = g.point(3, 1);
    const double r = g.uniform(0.01, 4);
    EXPECT_NEAR(h.dist(SpacePoint(3), h.dilate(u, r)), r * h.dist(SpacePoint(3), u), 1e-12);
  }
}

TEST(MetricProperty, GroupTranslationIsAnIsometry) {
  twtest::Gen g(16);
  const MetricSpace h = MetricSpace::heisenberg();
  for (int i = 0; i < 200; ++i) {
    const SpacePoint a = g.point(3, 1), x = g.point(3, 1), y = g.point(3, 1);
    EXPECT_NEAR(h.dist(h.translate(a, x), h.translate(a, y)), h.dist(x, y), 1e-12);
    const SpacePoint back = h.translate(a, h.relative(a, x));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(back[k], x[k], 1e-12);
  }
}

TEST(MetricProperty, MonteCarloVolumeWithinThreeStandardErrors) {
  // In one dimension the sampling box is the ball, so the estimate is exact.
  const VolumeEstimate line = MetricSpace::euclidean(1).with_monte_carlo(100, 1).ball_volume_estimate({0.0}, 0.7);
  EXPECT_NEAR(line.value, 1.4, 1e-15);
  EXPECT_EQ(line.std_error, 0.0);
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const MetricSpace m = MetricSpace::euclidean(n).with_monte_carlo(20000, seed);
      const VolumeEstimate v = m.ball_volume_estimate(SpacePoint(n), 0.7);
      const double exact = MetricSpace::euclidean(n).ball_volume(SpacePoint(n), 0.7);
      EXPECT_GT(v.std_error, 0.0);
      EXPECT_LE(std::abs(v.value - exact), 3 * v.std_error) << "n " << n << " seed " << seed;
    }
  }
}

TEST(Metric, TableMetricInterpolates) {
  const std::vector<double> nodes = {0.0, 1.0, 2.0};
  std::vector<double> d(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i * 3 + j] = std::abs(nodes[i] - nodes[j]);
  const MetricSpace t = MetricSpace::table(nodes, d, 2.0, 5000, 7);
  EXPECT_NEAR(t.dist({0.5}, {1.5}), 1.0, 1e-12);
  EXPECT_FALSE(t.assumptions_verified());
  EXPECT_EQ(t.volume_mode(), VolumeMode::kMonteCarlo);
}
