#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "thermowiener/capacity.hpp"
#include "thermowiener/errors.hpp"

using namespace thermowiener;

namespace {

const SpaceTimePoint kOrigin{SpacePoint{0.0}, 0.0};

CapacityProblem random_problem(twtest::Gen& g, const Kernel& k, int atoms) {
  CapacityProblem p{k, {}, {}, 1e-9, kOrigin, true, 0};
  const double shift = g.uniform(0.005, 0.02);
  for (int i = 0; i < atoms; ++i) {
    p.support.push_back({SpacePoint{g.uniform(-0.5, 0.5)}, g.uniform(-0.25, 0.0)});
    p.constraints.push_back({p.support.back().x, p.support.back().t + shift});
  }
  return p;
}

}  // namespace

TEST(Capacity, SingleAtom) {
  const Kernel k = Kernel::gaussian(MetricSpace::euclidean(1), 0.25);
  const SpaceTimePoint atom{SpacePoint{0.1}, -0.05};
  const SpaceTimePoint above{SpacePoint{0.1}, -0.04};
  const CapacityProblem p{k, {atom}, {above}, 1e-9, kOrigin, true, 0};
  const CapacityEstimate e = solve_capacity(p);
  EXPECT_NEAR(e.value, 1 / k(above, atom), 1e-9 * e.value);
  EXPECT_NEAR(potential_eval(e, p, above), 1.0, 1e-9);
}

TEST(Capacity, EmptySupport) {
  const Kernel k = Kernel::gaussian(MetricSpace::euclidean(1), 0.25);
  const CapacityEstimate e = solve_capacity({k, {}, {}, 1e-6, kOrigin, true, 0});
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.n_atoms, 0u);
}

TEST(Capacity, FlatHeatCapacityMatchesFrozenOracle) {
  // Independent fine-grid LP at 256/512/1024 cells, Richardson extrapolated.
  const double oracle = 1.0;
  const RefinementReport r = refine_compact(MetricSpace::euclidean(1), kOrigin, FlatBoxSet{{-0.5}, {0.5}},
                                            Kernel::heat(1, 1.0), 4, 3);
  ASSERT_EQ(r.levels.size(), 4u);
  for (std::size_t i = 1; i < r.levels.size(); ++i) EXPECT_LT(r.levels[i].value, r.levels[i - 1].value);
  const double extrapolated = 2 * r.levels[3].value - r.levels[2].value;
  EXPECT_NEAR(extrapolated, oracle, 1e-3);
  EXPECT_NEAR(r.levels[3].value, oracle, 1e-2);
}

TEST(CapacityProperty, PotentialBoundedOnConstraints) {
  twtest::Gen g(61);
  const Kernel k = Kernel::gaussian(MetricSpace::euclidean(1), 0.25);
  for (int trial = 0; trial < 20; ++trial) {
    const CapacityProblem p = random_problem(g, k, g.integer(5, 60));
    const CapacityEstimate e = solve_capacity(p);
    for (const auto& c : p.constraints) EXPECT_LE(potential_eval(e, p, c), 1 + 1e-9) << "seed " << g.seed();
    double mass = 0;
    for (double m : e.mu) {
      EXPECT_GE(m, 0.0);
      mass += m;
    }
    EXPECT_NEAR(mass, e.value, 1e-12 * std::max(1.0, mass));
    EXPECT_LE(e.gap, 1e-9 * e.value);
  }
}

TEST(CapacityProperty, MonotoneUnderInclusion) {
  twtest::Gen g(62);
  const Kernel k = Kernel::gaussian(MetricSpace::euclidean(1), 0.25);
  for (int trial = 0; trial < 20; ++trial) {
    const CapacityProblem full = random_problem(g, k, g.integer(10, 60));
    CapacityProblem part = full;
    part.support.resize(g.integer(1, static_cast<int>(full.support.size())));
    EXPECT_LE(solve_capacity(part).value, solve_capacity(full).value * (1 + 1e-9)) << "seed " << g.seed();
  }
}

TEST(CapacityProperty, DilationScalesBySpaceVolume) {
  // K(r x, r^2 t) = r^-N K(x, t) for euclidean Gaussian kernels.
  twtest::Gen g(63);
  const MetricSpace m = MetricSpace::euclidean(1);
  const Kernel k = Kernel::gaussian(m, 0.25);
  for (int trial = 0; trial < 10; ++trial) {
    const CapacityProblem p = random_problem(g, k, 30);
    const double r = g.uniform(0.1, 0.9);
    CapacityProblem q = p;
    for (auto* v : {&q.support, &q.constraints})
      for (auto& z : *v) z = {SpacePoint{r * z.x[0]}, r * r * z.t};
    EXPECT_NEAR(solve_capacity(q).value, r * solve_capacity(p).value, 1e-7 * solve_capacity(p).value);
  }
}

TEST(CapacityProperty, LargerExponentGivesLargerCapacity) {
  twtest::Gen g(64);
  const MetricSpace m = MetricSpace::euclidean(1);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = g.uniform(0.125, 0.5);
    const CapacityProblem p = random_problem(g, Kernel::gaussian(m, a), 40);
    CapacityProblem q = p;
    q.kernel = Kernel::gaussian(m, a * g.uniform(1.2, 3));
    EXPECT_GE(solve_capacity(q).value, solve_capacity(p).value * (1 - 1e-9));
  }
}

TEST(Capacity, ForwardConstraintsSitAboveAtoms) {
  const MetricSpace m = MetricSpace::euclidean(1);
  const CapacityProblem p =
      compact_problem(m, kOrigin, SpaceTimeBoxSet{{-0.25}, {0.25}, -0.25, 0.0}, Kernel::gaussian(m, 0.25), 3);
  EXPECT_GT(p.constraints.size(), p.support.size());
  const CapacityEstimate e = solve_capacity(p);
  EXPECT_GT(e.value, 0.0);
  EXPECT_LE(e.max_constraint_potential, 1 + 1e-6);
}
