#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/sampling.hpp"

using namespace thermowiener;

namespace {

DomainSpec halfspace() { return find_benchmark("halfspace-time").make(); }

// Midpoint count of ring_membership_local on a cartesian (u, s) grid.
double ring_voxel_measure(const DomainSpec& d, const RingSpec& ring, int cells) {
  const double eta_hi = std::pow(ring.lambda, ring.k), eta_lo = std::pow(ring.lambda, ring.k + 1);
  const double reach = std::sqrt(eta_hi * ring.h * std::log(1 / ring.lambda));
  const double hu = 2 * reach / cells, hs = (eta_hi - eta_lo) / cells;
  long hits = 0;
  for (int i = 0; i < cells; ++i) {
    const SpacePoint u{-reach + (i + 0.5) * hu};
    for (int j = 0; j < cells; ++j)
      if (ring_membership_local(d, ring, u, -eta_hi + (j + 0.5) * hs)) ++hits;
  }
  return hits * hu * hs;
}

}  // namespace

TEST(Sampling, SectionMeasureExample) {
  // |u| <= sqrt(eta log rho) = 0.1 at eta = 0.01, rho = e.
  const SetSample s = sample_set_and_measure(halfspace(), SectionTarget{0.25, std::exp(1.0), 0.01}, 8);
  EXPECT_TRUE(s.spatial);
  EXPECT_NEAR(s.measure_estimate, 0.2, 2e-3);
}

TEST(Sampling, SectionHonoursExcludedSide) {
  // Only u <= 0 is excluded in the spatial halfspace, so half the section.
  const DomainSpec d = find_benchmark("spatial-halfspace").make();
  const SetSample s = sample_set_and_measure(d, SectionTarget{0.25, std::exp(1.0), 0.01}, 8);
  EXPECT_NEAR(s.measure_estimate, 0.1, 2e-3);
  const DomainSpec cyl = find_benchmark("cylinder-top").make();
  EXPECT_EQ(sample_set_and_measure(cyl, SectionTarget{0.25, std::exp(1.0), 0.01}, 8).measure_estimate, 0.0);
  EXPECT_THROW(sample_set_and_measure(d, SectionTarget{0.25, 0.5, 0.01}, 6), InputError);
  EXPECT_THROW(sample_set_and_measure(d, SectionTarget{0.25, 2.0, 0.3}, 6), InputError);
}

TEST(Sampling, EmptyRingHasZeroMeasure) {
  // Below the cylinder top only |u| >= 0.4 is excluded; this ring stays
  // within |u| < 0.15.
  const DomainSpec cyl = find_benchmark("cylinder-top").make();
  const SetSample s = sample_set_and_measure(cyl, RingSpec{0.25, 3, 1, RingVariant::kOmega}, 5);
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.measure_estimate, 0.0);
}

TEST(Sampling, RingMeasureMatchesVoxelCount) {
  const DomainSpec d = halfspace();
  for (const RingSpec ring : {RingSpec{0.25, 1, 1, RingVariant::kOmega}, RingSpec{0.25, 1, 2, RingVariant::kOmega},
                              RingSpec{0.25, 2, 3, RingVariant::kDee}}) {
    const double oracle = ring_voxel_measure(d, ring, 1500);
    const SetSample s = sample_set_and_measure(d, ring, 7);
    EXPECT_NEAR(s.measure_estimate, oracle, 0.02 * oracle) << "k " << ring.k << " h " << ring.h;
  }
}

TEST(Sampling, RefinementErrorShrinks) {
  const DomainSpec d = halfspace();
  const RingSpec ring{0.25, 1, 2, RingVariant::kOmega};
  const SetSample coarse = sample_set_and_measure(d, ring, 4), fine = sample_set_and_measure(d, ring, 7);
  EXPECT_LT(fine.standard_error, coarse.standard_error);
}

TEST(Sampling, MergeDropsDuplicates) {
  const DomainSpec d = halfspace();
  const SetSample a = sample_set_and_measure(d, RingSpec{0.25, 1, 1, RingVariant::kOmega}, 4);
  const SetSample m = merge_samples({a, a});
  EXPECT_EQ(m.size(), a.size());
  const SetSample empty = merge_samples({});
  EXPECT_TRUE(empty.empty());
}

TEST(Sampling, CompactBallCoversItsVolume) {
  const MetricSpace m = MetricSpace::euclidean(1);
  const SetSample s = sample_compact(m, {SpacePoint{0.0}, 0.0}, ParabolicBallSet{0.5}, 7);
  // {x^4 + t^2 <= r^4}: area r^3 * integral_{-1}^{1} 2 (1 - t^2)^(1/4) dt.
  double shape = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double t = -1 + (i + 0.5) * 2.0 / n;
    shape += 2 * std::pow(1 - t * t, 0.25) * 2.0 / n;
  }
  EXPECT_NEAR(s.measure_estimate, shape * 0.125, 0.01 * shape * 0.125);
  EXPECT_GT(s.time_step, 0.0);
}

TEST(SamplingProperty, WeightsAddUpToMeasure) {
  twtest::Gen g(41);
  const DomainSpec d = find_benchmark("cone").make();
  for (int i = 0; i < 10; ++i) {
    const RingSpec ring{0.25, g.integer(1, 3), g.integer(1, 5), g.coin() ? RingVariant::kOmega : RingVariant::kDee};
    const SetSample s = sample_set_and_measure(d, ring, 5, false);
    double w = 0;
    for (double x : s.weights) w += x;
    EXPECT_NEAR(w, s.measure_estimate, 1e-12 * std::max(1.0, w));
    for (const auto& z : s.points) EXPECT_TRUE(ring_membership_local(d, ring, z.x, z.t));
  }
}
