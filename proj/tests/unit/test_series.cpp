#include <gtest/gtest.h>

#include <cmath>

#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/wiener.hpp"

using namespace thermowiener;

namespace {

std::vector<double> sums(int K, double (*f)(int)) {
  std::vector<double> s(K);
  for (int k = 1; k <= K; ++k) s[k - 1] = f(k);
  return s;
}

}  // namespace

TEST(Verdict, LinearGrowthDiverges) {
  const SeriesReport r = divergence_verdict(sums(40, [](int k) { return 0.3 * k; }));
  EXPECT_EQ(r.verdict, Verdict::kDivergent);
  EXPECT_NEAR(r.doubling_ratio, 2.0, 1e-12);
  EXPECT_NEAR(r.growth_slope, 0.3, 1e-12);
}

TEST(Verdict, ZeroTailConverges) {
  const SeriesReport r = divergence_verdict(sums(30, [](int k) { return k < 5 ? 0.1 * k : 0.5; }));
  EXPECT_EQ(r.verdict, Verdict::kConvergent);
  EXPECT_TRUE(r.zero_tail);
  const SeriesReport z = divergence_verdict(std::vector<double>(20, 0.0));
  EXPECT_EQ(z.verdict, Verdict::kConvergent);
}

TEST(Verdict, GeometricTailConverges) {
  const SeriesReport r = divergence_verdict(sums(40, [](int k) { return 1 - std::pow(0.5, k); }));
  EXPECT_EQ(r.verdict, Verdict::kConvergent);
  EXPECT_NEAR(r.geometric_ratio, 0.5, 1e-9);
  EXPECT_GT(r.geometric_r2, 0.999);
  EXPECT_NEAR(r.geometric_tail_bound, std::pow(0.5, 40), 1e-15);
}

TEST(Verdict, HarmonicIsInconclusive) {
  const SeriesReport r = divergence_verdict(sums(40, [](int k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += 1.0 / j;
    return s;
  }));
  EXPECT_EQ(r.verdict, Verdict::kInconclusive);
}

TEST(Verdict, RejectsShortOrDecreasingSums) {
  EXPECT_THROW(divergence_verdict(std::vector<double>(19, 1.0)), InputError);
  std::vector<double> s(20, 1.0);
  s[10] = 0.5;
  EXPECT_THROW(divergence_verdict(s), InputError);
}

TEST(SeriesTable, HalfspaceFirstColumnPositive) {
  const DomainSpec d = find_benchmark("halfspace-time").make();
  const SeriesTable t = series_table(d, 0.25, 0.25, 0.5, SeriesVariant::kSufficient, {4, 4, 3, 1e-6});
  ASSERT_EQ(t.terms.size(), 4u);
  for (const auto& row : t.terms) {
    ASSERT_EQ(row.size(), 4u);
    EXPECT_GT(row[0].capacity, 0.0);
    EXPECT_GT(row[0].term, 0.0);
    for (int h = 0; h < 4; ++h) EXPECT_NEAR(row[h].weight, std::pow(0.25, 0.5 * (h + 1)), 1e-15);
  }
  const auto S = t.partial_sums();
  for (std::size_t i = 1; i < S.size(); ++i) EXPECT_GE(S[i], S[i - 1]);
  EXPECT_FALSE(t.partial);
  EXPECT_GT(t.term_bound_C, 0.0);
}

TEST(SeriesTable, NecessaryCapacitiesDominate) {
  // The necessary variant measures with exponent b > a.
  const DomainSpec d = find_benchmark("cone").make();
  const SeriesTable suf = series_table(d, 0.25, 0.125, 0.5, SeriesVariant::kSufficient, {3, 3, 3, 1e-6});
  const SeriesTable nec = series_table(d, 0.25, 0.125, 0.5, SeriesVariant::kNecessary, {3, 3, 3, 1e-6});
  for (int k = 0; k < 3; ++k)
    for (int h = 0; h < 3; ++h)
      EXPECT_LE(suf.terms[k][h].capacity, nec.terms[k][h].capacity * (1 + 1e-6));
}

TEST(Sandwich, DeeRowBetweenOmegaBounds) {
  const DomainSpec d = find_benchmark("cone").make();
  for (int k = 1; k <= 3; ++k) {
    const SandwichRow r = ring_sandwich(d, 0.25, 0.25, 0.5, k, 6, 3);
    EXPECT_TRUE(r.holds) << "k " << k;
    EXPECT_LE(r.omega_sum, r.dee_sum * (1 + 1e-6));
    EXPECT_LE(r.dee_sum, r.upper * (1 + 1e-6));
  }
}

TEST(Comparability, EqualRatiosGiveConstantBelowOne) {
  const DomainSpec d = find_benchmark("halfspace-time").make();
  const ComparabilityReport r = lambda_comparability(d, 0.25, 0.5, 0.25, 0.25, {2, 4, 6}, {6, 8, 3, 1e-6});
  EXPECT_GT(r.C, 0.0);
  EXPECT_LT(r.C, 1.0);
  for (std::size_t i = 0; i < r.s_values.size(); ++i) EXPECT_NEAR(r.z_lambda[i], r.z_mu[i], 1e-12 * r.z_mu[i]);
}
