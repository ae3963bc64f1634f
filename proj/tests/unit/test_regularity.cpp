#include <gtest/gtest.h>

#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/regularity.hpp"

using namespace thermowiener;

namespace {

DomainSpec cone_with(double theta) {
  DomainParams p;
  p.s_lo = -0.25;
  p.theta = theta;
  return DomainSpec(Family::kCone, p, MetricSpace::euclidean(1), {SpacePoint{0.0}, 0.0});
}

}  // namespace

TEST(ConeCheck, MeasuresApertureFraction) {
  for (double theta : {0.25, 0.5, 1.0}) {
    const ConeReport r = cone_check(cone_with(theta), ConeOptions{});
    ASSERT_EQ(r.radii.size(), 6u);
    for (double th : r.theta_hat) EXPECT_NEAR(th, theta, 0.01) << "theta " << theta;
    EXPECT_TRUE(r.satisfied);
  }
}

TEST(ConeCheck, PowerCuspFails) {
  DomainParams p;
  p.s_lo = -0.3;
  p.cusp = {CuspProfile::Kind::kPower, 1.0, 1.0};
  const DomainSpec d(Family::kCusp, p, MetricSpace::euclidean(1), {SpacePoint{0.0}, 0.0});
  ConeOptions o;
  o.r_levels = 8;
  const ConeReport r = cone_check(d, o);
  EXPECT_FALSE(r.satisfied);
  EXPECT_LT(r.theta, 0.01);
  // The fraction shrinks like r until it reaches one slice cell.
  for (std::size_t i = 1; i < r.theta_hat.size(); ++i) EXPECT_LE(r.theta_hat[i], r.theta_hat[i - 1]);
  EXPECT_LT(r.theta_hat.back(), 0.1 * r.theta_hat.front());
}

TEST(Classify, ConeIsRegularViaCone) {
  const Classification c = classify(find_benchmark("cone").make(), heat_operator_options(1.0));
  EXPECT_EQ(c.verdict, RegularityVerdict::kRegular);
  EXPECT_EQ(c.basis, RegularityBasis::kCone);
  EXPECT_FALSE(c.sufficient.has_value());
}

TEST(Classify, HalfspaceRegularWithoutCone) {
  ClassifyOptions o = heat_operator_options(1.0);
  o.use_cone = false;
  o.series = {20, 20, 3, 1e-6};
  const Classification c = classify(find_benchmark("halfspace-time").make(), o);
  EXPECT_EQ(c.verdict, RegularityVerdict::kRegular);
  EXPECT_EQ(c.basis, RegularityBasis::kSufficientSeries);
}

TEST(Classify, IrregularBenchmarks) {
  ClassifyOptions o = heat_operator_options(1.0);
  o.series = {20, 20, 3, 1e-6};
  for (const char* name : {"cylinder-top", "punctured"}) {
    const Classification c = classify(find_benchmark(name).make(), o);
    EXPECT_EQ(c.verdict, RegularityVerdict::kIrregular) << name;
    EXPECT_EQ(c.basis, RegularityBasis::kNecessarySeriesConverges) << name;
  }
}

TEST(Classify, RejectsExponentsOutsideBounds) {
  ClassifyOptions o = heat_operator_options(1.0);
  o.a = 0.5;
  EXPECT_THROW(classify(find_benchmark("cone").make(), o), InputError);
  o = heat_operator_options(1.0);
  o.b = 0.2;
  EXPECT_THROW(classify(find_benchmark("cone").make(), o), InputError);
  EXPECT_THROW(heat_operator_options(0.0), InputError);
}

TEST(Classify, HeatOptionsScaleWithBeta) {
  const ClassifyOptions o = heat_operator_options(2.0);
  EXPECT_DOUBLE_EQ(o.a0, 0.5);
  EXPECT_DOUBLE_EQ(o.b0, 0.5);
  EXPECT_DOUBLE_EQ(o.a, 0.5);
  EXPECT_DOUBLE_EQ(o.b, 1.0);
}
