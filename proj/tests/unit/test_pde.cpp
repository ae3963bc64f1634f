#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/pde.hpp"

using namespace thermowiener;

namespace {

DomainSpec slab() {
  DomainParams p;
  p.half_width = 10;
  return DomainSpec(Family::kHalfspaceTime, p, MetricSpace::euclidean(1), {SpacePoint{0.0}, 0.0});
}

WalkConfig walk(int walkers, double step, std::uint64_t seed) {
  WalkConfig c;
  c.walkers = walkers;
  c.step = step;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Walk, ConstantDataIsExact) {
  const DomainSpec d = find_benchmark("cone").make();
  const SolutionEstimate e = pwb_solve(d, [](const SpaceTimePoint&) { return 0.7; }, {{0.1}, 0.05}, walk(200, 1e-3, 3));
  EXPECT_DOUBLE_EQ(e.value, 0.7);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.walkers, 200);
}

TEST(Walk, LinearDataOnSlab) {
  const SolutionEstimate e =
      pwb_solve(slab(), [](const SpaceTimePoint& z) { return z.x[0]; }, {{0.3}, 0.5}, walk(4000, 1e-3, 5));
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_LE(std::abs(e.value - 0.3), 3 * e.std_error);
  EXPECT_NEAR(e.exits.mean_exit_time, 0.5, 1e-2);
  EXPECT_GT(e.exits.bottom, 0.99);
}

TEST(Walk, SameSeedSameResult) {
  const DomainSpec d = find_benchmark("cylinder-top").make();
  auto phi = [](const SpaceTimePoint& z) { return z.x[0] * z.x[0]; };
  const SolutionEstimate a = pwb_solve(d, phi, {{0.1}, -0.1}, walk(300, 1e-3, 9));
  const SolutionEstimate b = pwb_solve(d, phi, {{0.1}, -0.1}, walk(300, 1e-3, 9));
  const SolutionEstimate c = pwb_solve(d, phi, {{0.1}, -0.1}, walk(300, 1e-3, 10));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.exit_times, b.exit_times);
  EXPECT_NE(a.value, c.value);
}

TEST(Walk, RejectsBadConfig) {
  const DomainSpec d = slab();
  auto phi = [](const SpaceTimePoint&) { return 0.0; };
  EXPECT_THROW(pwb_solve(d, phi, {{0.3}, 0.5}, walk(0, 1e-3, 1)), InputError);
  EXPECT_THROW(pwb_solve(d, phi, {{0.3}, 0.5}, walk(10, -1, 1)), InputError);
  EXPECT_THROW(pwb_solve(d, phi, {{0.3}, -0.5}, walk(10, 1e-3, 1)), InputError);
}

TEST(HolderFit, SyntheticSquareRoot) {
  std::vector<HolderProbe> probes;
  for (int j = 0; j < 8; ++j) {
    HolderProbe p;
    p.dhat = std::pow(0.5, j + 2);
    p.gap = 0.8 * std::sqrt(p.dhat);
    p.std_error = 1e-4;
    probes.push_back(p);
  }
  const HolderFit f = fit_holder(probes);
  EXPECT_EQ(f.status, HolderStatus::kFit);
  EXPECT_NEAR(f.alpha0, 0.5, 1e-12);
  EXPECT_NEAR(f.c, 0.8, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(HolderFit, FlatGapIsNoDecay) {
  std::vector<HolderProbe> probes;
  for (int j = 0; j < 6; ++j) {
    HolderProbe p;
    p.dhat = std::pow(0.5, j);
    p.gap = 1.0;
    probes.push_back(p);
  }
  EXPECT_EQ(fit_holder(probes).status, HolderStatus::kNoDecay);
  probes.resize(2);
  probes[1].gap = 0.0;
  EXPECT_EQ(fit_holder(probes).status, HolderStatus::kInsufficientProbes);
}

TEST(HolderFit, ConeDistanceDataDecays) {
  const DomainSpec d = find_benchmark("cone").make();
  auto phi = [](const SpaceTimePoint& z) {
    return std::min(1.0, std::pow(std::pow(z.x[0], 4) + z.t * z.t, 0.25) / 0.25);
  };
  const HolderFit f = boundary_holder(d, phi, {{{0.0}, 1.0}, 0.25, 0.5}, 6, walk(1000, 1e-4, 77));
  ASSERT_EQ(f.status, HolderStatus::kFit) << f.note;
  EXPECT_GT(f.alpha0, 0.0);
  EXPECT_GE(f.r2, 0.9);
}

TEST(Ks, DetectsShift) {
  twtest::Gen g(71);
  std::vector<double> x(2000), y(2000), z(2000);
  for (auto& v : x) v = g.normal();
  for (auto& v : y) v = g.normal();
  for (auto& v : z) v = g.normal() + 0.5;
  const KsResult same = ks_two_sample(x, y);
  EXPECT_TRUE(same.same);
  EXPECT_NEAR(same.critical, 1.628 * std::sqrt(4000.0 / (2000.0 * 2000.0)), 1e-15);
  EXPECT_FALSE(ks_two_sample(x, z).same);
  EXPECT_NEAR(ks_two_sample({1, 2, 3}, {4, 5, 6}).statistic, 1.0, 1e-15);
  EXPECT_THROW(ks_two_sample({}, {1}), InputError);
}
