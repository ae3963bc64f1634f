#include "thermowiener/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "thermowiener/numerics.hpp"

namespace thermowiener {

namespace {

// Pinned acceptance tolerances.
constexpr double kLpGap = 1e-6;
constexpr double kLpSeconds = 10.0;
constexpr double kLawSlack = 2.0;  // multiples of the solver tolerance
constexpr double kFlatSpread = 10.0;
constexpr double kFlatRefinement = 0.2;
constexpr double kFlatSeconds = 300.0;
constexpr double kComparabilitySpread = 20.0;
constexpr double kBallSpread = 3.0;
constexpr double kDoubling = 1.5;
constexpr double kBenchmarkSeconds = 600.0;
constexpr double kStdErrors = 3.0;
constexpr double kNoDecayStdErrors = 5.0;
constexpr double kGeometricRatio = 0.9;
constexpr double kGeometricR2 = 0.95;
constexpr double kLambdaMuSpread = 2.0;
constexpr double kSpearman = -0.9;
constexpr double kHalvingStdErrors = 2.0;

constexpr double kTolerance = 1e-6;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_real(v); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0 ? *hi / *lo : INFINITY;
}

// Random atoms and constraints in space-time for N = 1.
struct RandomInstance {
  std::vector<SpaceTimePoint> atoms;
  std::vector<SpaceTimePoint> extra;
  double shift = 0.0;
};

RandomInstance random_instance(std::mt19937_64& rng, int n_atoms, int n_extra) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5), ut(-0.25, 0.0), sh(0.005, 0.02);
  std::uniform_real_distribution<double> ex(-0.6, 0.6), et(-0.25, 0.1);
  RandomInstance r;
  r.shift = sh(rng);
  for (int i = 0; i < n_atoms; ++i) r.atoms.push_back({SpacePoint{ux(rng)}, ut(rng)});
  for (int i = 0; i < n_extra; ++i) r.extra.push_back({SpacePoint{ex(rng)}, et(rng)});
  return r;
}

std::vector<SpaceTimePoint> constraints_for(const std::vector<SpaceTimePoint>& atoms,
                                            const std::vector<SpaceTimePoint>& extra, double shift) {
  std::vector<SpaceTimePoint> c = extra;
  for (const auto& a : atoms) c.push_back({a.x, a.t + shift});
  return c;
}

CapacityEstimate solve_points(const Kernel& k, std::vector<SpaceTimePoint> atoms,
                              std::vector<SpaceTimePoint> constraints) {
  CapacityProblem p;
  p.kernel = k;
  p.support = std::move(atoms);
  p.constraints = std::move(constraints);
  p.tolerance = kTolerance;
  p.local = true;
  p.anchor = {SpacePoint(1), 0.0};
  return solve_capacity(p);
}

CriterionResult lp_correctness(const AcceptanceOptions& opt) {
  CriterionResult r;
  const MetricSpace m = MetricSpace::euclidean(1);
  double worst_gap = 0, worst_time = 0;
  Json rows = Json::array();
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(derive_seed(opt.seed, 100 + i));
    const int n = std::uniform_int_distribution<int>(100, 400)(rng);
    const int extra = std::uniform_int_distribution<int>(0, 2 * n)(rng);
    const double a = std::uniform_real_distribution<double>(0.125, 0.5)(rng);
    const RandomInstance inst = random_instance(rng, n, extra);
    const auto t0 = std::chrono::steady_clock::now();
    const CapacityEstimate e =
        solve_points(Kernel::gaussian(m, a), inst.atoms, constraints_for(inst.atoms, inst.extra, inst.shift));
    const double secs = seconds_since(t0);
    const double rel = e.value > 0 ? e.gap / e.value : 0.0;
    worst_gap = std::max(worst_gap, rel);
    worst_time = std::max(worst_time, secs);
    rows.push_back({{"atoms", n}, {"constraints", e.n_constraints}, {"a", a}, {"value", e.value},
                    {"relative_gap", rel}, {"seconds", secs}});
  }
  r.pass = worst_gap <= kLpGap && worst_time <= kLpSeconds;
  r.detail = "20 instances, worst relative gap " + fmt(worst_gap) + ", worst time " + fmt(worst_time) + " s";
  r.data = {{"instances", rows}};
  return r;
}

CriterionResult capacity_laws(const AcceptanceOptions& opt) {
  CriterionResult r;
  const MetricSpace m = MetricSpace::euclidean(1);
  const double slack = kLawSlack * kTolerance;
  int mono = 0, sub = 0, order = 0;
  double worst_mono = -INFINITY, worst_sub = -INFINITY, worst_order = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(derive_seed(opt.seed, 1000 + i));
    const int n = std::uniform_int_distribution<int>(30, 80)(rng);
    const double a = std::uniform_real_distribution<double>(0.125, 0.5)(rng);
    const Kernel k = Kernel::gaussian(m, a);
    const RandomInstance inst = random_instance(rng, n, n);
    const auto cons = constraints_for(inst.atoms, inst.extra, inst.shift);

    // Monotonicity: F1 is a random prefix of F2 on the same grid.
    const int n1 = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const std::vector<SpaceTimePoint> f1(inst.atoms.begin(), inst.atoms.begin() + n1);
    const double c1 = solve_points(k, f1, cons).value, c2 = solve_points(k, inst.atoms, cons).value;
    const double dm = (c1 - c2) / std::max(c2, 1e-300);
    worst_mono = std::max(worst_mono, dm);
    if (dm > slack) ++mono;

    // Subadditivity over a random split.
    std::vector<SpaceTimePoint> a1, a2;
    for (const auto& z : inst.atoms) (std::bernoulli_distribution(0.5)(rng) ? a1 : a2).push_back(z);
    const double s1 = a1.empty() ? 0.0 : solve_points(k, a1, cons).value;
    const double s2 = a2.empty() ? 0.0 : solve_points(k, a2, cons).value;
    const double ds = (c2 - s1 - s2) / c2;
    worst_sub = std::max(worst_sub, ds);
    if (ds > slack) ++sub;

    // Kernel ordering: G_a2 <= G_a pointwise for a2 > a.
    const double a2x = a * std::uniform_real_distribution<double>(1.2, 3.0)(rng);
    const double big = solve_points(Kernel::gaussian(m, a2x), inst.atoms, cons).value;
    const double dk = (c2 - big) / big;
    worst_order = std::max(worst_order, dk);
    if (dk > slack) ++order;
  }
  r.pass = mono == 0 && sub == 0 && order == 0;
  r.detail = "violations: monotonicity " + std::to_string(mono) + ", subadditivity " + std::to_string(sub) +
             ", kernel ordering " + std::to_string(order) + " (100 instances each)";
  r.data = {{"monotonicity_violations", mono},       {"subadditivity_violations", sub},
            {"ordering_violations", order},          {"worst_monotonicity_excess", worst_mono},
            {"worst_subadditivity_excess", worst_sub}, {"worst_ordering_excess", worst_order}};
  return r;
}

struct FlatCase {
  std::vector<double> lo, hi;
};

CriterionResult flat_sets(const AcceptanceOptions&) {
  CriterionResult r;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<FlatCase> cases = {
      {{-0.125}, {0.125}},        {{-0.25}, {0.25}},          {{-0.5}, {0.5}},
      {{-0.75}, {0.75}},          {{-1.0}, {1.0}},            {{-0.25, -0.25}, {0.25, 0.25}},
      {{-0.5, -0.25}, {0.5, 0.25}}, {{-0.5, -0.5}, {0.5, 0.5}}, {{-0.125, -0.5}, {0.125, 0.5}},
      {{-1.0, -0.25}, {1.0, 0.25}},
  };
  std::vector<double> ratios;
  double worst_change = 0;
  Json rows = Json::array();
  for (const auto& c : cases) {
    const int n = static_cast<int>(c.lo.size());
    const MetricSpace m = MetricSpace::euclidean(n);
    FlatBoxSet set{SpacePoint(n), SpacePoint(n)};
    double area = 1;
    for (int i = 0; i < n; ++i) {
      set.lo[i] = c.lo[i];
      set.hi[i] = c.hi[i];
      area *= c.hi[i] - c.lo[i];
    }
    const int base = n == 1 ? 4 : 2, levels = n == 1 ? 4 : 3;
    const RefinementReport rep =
        refine_compact(m, {SpacePoint(n), 0.0}, set, Kernel::gaussian(m, 0.25), levels, base, kTolerance);
    const double ratio = rep.levels.back().value / area;
    ratios.push_back(ratio);
    worst_change = std::max(worst_change, rep.last_relative_change);
    rows.push_back({{"dim", n}, {"area", area}, {"ratio", ratio}, {"last_relative_change", rep.last_relative_change},
                    {"refinement", to_json(rep)}});
  }
  const double secs = seconds_since(t0);
  const double sp = spread(ratios);
  r.pass = sp <= kFlatSpread && worst_change < kFlatRefinement && secs <= kFlatSeconds;
  r.detail = "C/|A| spread " + fmt(sp) + ", worst refinement change " + fmt(worst_change) + ", " + fmt(secs) + " s";
  r.data = {{"rectangles", rows}, {"spread", sp}};
  return r;
}

CriterionResult euclidean_comparability(const AcceptanceOptions&) {
  CriterionResult r;
  struct Case {
    int n;
    CompactSet set;
  };
  auto pt = [](std::initializer_list<double> v) { return SpacePoint(v); };
  const std::vector<Case> cases = {
      {1, ParabolicBallSet{0.1}},
      {1, ParabolicBallSet{0.25}},
      {1, ParabolicBallSet{0.5}},
      {1, FlatBoxSet{pt({-0.15}), pt({0.15})}},
      {1, FlatBoxSet{pt({-0.5}), pt({0.5})}},
      {1, SpaceTimeBoxSet{pt({-0.25}), pt({0.25}), -0.25, 0.0}},
      {1, SpaceTimeBoxSet{pt({-0.05}), pt({0.05}), -0.5, 0.0}},
      {1, SpaceTimeBoxSet{pt({-0.5}), pt({0.5}), -0.01, 0.0}},
      {1, SpaceTimeBoxSet{pt({0.0}), pt({0.3}), -0.1, 0.0}},
      {2, ParabolicBallSet{0.25}},
      {2, ParabolicBallSet{0.5}},
      {2, FlatBoxSet{pt({-0.25, -0.25}), pt({0.25, 0.25})}},
      {2, FlatBoxSet{pt({-0.5, -0.1}), pt({0.5, 0.1})}},
      {2, SpaceTimeBoxSet{pt({-0.25, -0.25}), pt({0.25, 0.25}), -0.1, 0.0}},
      {2, SpaceTimeBoxSet{pt({-0.1, -0.4}), pt({0.1, 0.4}), -0.3, 0.0}},
  };
  std::vector<double> ratios;
  Json rows = Json::array();
  for (const auto& c : cases) {
    const MetricSpace m = MetricSpace::euclidean(c.n);
    const SpaceTimePoint anchor{SpacePoint(c.n), 0.0};
    const int res = c.n == 1 ? 4 : 3;
    const double lo = solve_capacity(compact_problem(m, anchor, c.set, Kernel::gaussian(m, 0.125), res)).value;
    const double hi = solve_capacity(compact_problem(m, anchor, c.set, Kernel::gaussian(m, 0.5), res)).value;
    ratios.push_back(lo / hi);
    rows.push_back({{"dim", c.n}, {"C_1/8", lo}, {"C_1/2", hi}, {"ratio", lo / hi}});
  }
  const double sp = spread(ratios);
  r.pass = sp <= kComparabilitySpread;
  r.detail = "15 sets, spread of C_1/8 / C_1/2 = " + fmt(sp);
  r.data = {{"sets", rows}, {"spread", sp}};
  return r;
}

CriterionResult ball_bound(const AcceptanceOptions&) {
  CriterionResult r;
  const MetricSpace m = MetricSpace::euclidean(1);
  std::vector<double> ratios;
  Json rows = Json::array();
  for (int j = 2; j <= 6; ++j) {
    const double rad = std::pow(2.0, -j);
    const double c =
        solve_capacity(compact_problem(m, {SpacePoint(1), 0.0}, ParabolicBallSet{rad}, Kernel::gaussian(m, 0.25), 4))
            .value;
    const double ratio = c / m.ball_volume(SpacePoint(1), rad);
    ratios.push_back(ratio);
    rows.push_back({{"r", rad}, {"capacity", c}, {"ratio", ratio}});
  }
  const double sp = spread(ratios);
  r.pass = sp <= kBallSpread;
  r.detail = "C/|B| spread over r = 2^-2..2^-6: " + fmt(sp);
  r.data = {{"radii", rows}, {"spread", sp}};
  return r;
}

double distance_to_z0(const DomainSpec& dom, const SpaceTimePoint& z) {
  const SpaceTimePoint u = dom.to_local(z);
  return dom.metric().parabolic_dist(u, {SpacePoint(u.x.dim), 0.0});
}

CriterionResult regular_benchmark(const AcceptanceOptions& opt) {
  CriterionResult r;
  const auto t0 = std::chrono::steady_clock::now();
  const DomainSpec dom = find_benchmark("halfspace-time").make();
  SeriesOptions so;
  so.K_max = 40;
  so.H_max = 40;
  const SeriesTable t = series_table(dom, 0.25, 0.25, 0.5, SeriesVariant::kSufficient, so);
  const auto S = t.partial_sums();
  const double d10 = S[19] / S[9], d20 = S[39] / S[19];
  ClassifyOptions co = heat_operator_options(1.0);
  co.series = so;
  const Classification cls = classify(dom, co);

  // u = x + x^2 + 2t is caloric, so the gap is exactly 2 r^2 on the axis
  // while the standard error shrinks only like r.
  const BoundaryData phi = [](const SpaceTimePoint& z) { return z.x[0] + z.x[0] * z.x[0] + 2 * z.t; };
  WalkConfig w;
  w.step = 1e-5;
  w.walkers = 2000;
  w.seed = derive_seed(opt.seed, 6);
  const HolderFit probes = boundary_holder(dom, phi, {{SpacePoint{0.0}, 1.0}, 0.25, 0.5}, 7, w);
  bool decreasing = true;
  for (std::size_t i = 1; i < probes.probes.size(); ++i) {
    const auto &a = probes.probes[i - 1], &b = probes.probes[i];
    decreasing = decreasing && b.gap <= a.gap + kStdErrors * std::hypot(a.std_error, b.std_error);
  }
  const auto& last = probes.probes.back();
  const bool reaches = last.gap < kStdErrors * last.std_error && last.gap < probes.probes.front().gap;
  const double secs = seconds_since(t0);
  r.pass = d10 >= kDoubling && d20 >= kDoubling && cls.verdict == RegularityVerdict::kRegular && decreasing &&
           reaches && secs <= kBenchmarkSeconds;
  r.detail = "S(20)/S(10) = " + fmt(d10) + ", S(40)/S(20) = " + fmt(d20) + ", classify " +
             verdict_name(cls.verdict) + " (" + basis_name(cls.basis) + "), closest gap " + fmt(last.gap) +
             " vs 3se " + fmt(kStdErrors * last.std_error) + ", " + fmt(secs) + " s";
  r.data = {{"doubling_10", d10}, {"doubling_20", d20}, {"partial_sums", S}, {"classification", to_json(cls)},
            {"probes", to_json(probes)}, {"gaps_decreasing", decreasing}};
  return r;
}

CriterionResult irregular_benchmark(const AcceptanceOptions& opt) {
  CriterionResult r;
  const auto t0 = std::chrono::steady_clock::now();
  const DomainSpec dom = find_benchmark("cylinder-top").make();
  SeriesOptions so;
  so.K_max = 40;
  so.H_max = 40;
  const SeriesTable t = series_table(dom, 0.25, 0.25, 0.25, SeriesVariant::kNecessary, so);
  const SeriesReport rep = divergence_verdict(t);
  ClassifyOptions co = heat_operator_options(1.0);
  co.series = so;
  const Classification cls = classify(dom, co);

  const BoundaryData phi = [&dom](const SpaceTimePoint& z) {
    return std::min(1.0, distance_to_z0(dom, z) / dom.params().radius);
  };
  WalkConfig w;
  w.step = 1e-4;
  w.walkers = 1000;
  w.seed = derive_seed(opt.seed, 7);
  const HolderFit probes = boundary_holder(dom, phi, {{SpacePoint{0.0}, -1.0}, 0.25, 0.5}, 6, w);
  const auto& closest = probes.probes.back();
  const bool geometric = rep.verdict == Verdict::kConvergent && rep.geometric_ratio <= kGeometricRatio &&
                         rep.geometric_r2 >= kGeometricR2;
  const double secs = seconds_since(t0);
  r.pass = geometric && cls.verdict == RegularityVerdict::kIrregular && probes.status == HolderStatus::kNoDecay &&
           closest.gap >= kNoDecayStdErrors * closest.std_error && secs <= kBenchmarkSeconds;
  r.detail = "necessary series " + verdict_name(rep.verdict) + " (ratio " + fmt(rep.geometric_ratio) + ", R2 " +
             fmt(rep.geometric_r2) + (rep.zero_tail ? ", zero tail" : "") + "), classify " +
             verdict_name(cls.verdict) + ", pde " + holder_status_name(probes.status) + " with closest gap " +
             fmt(closest.gap) + " (se " + fmt(closest.std_error) + "), " + fmt(secs) + " s";
  r.data = {{"necessary", to_json(rep)}, {"classification", to_json(cls)}, {"probes", to_json(probes)}};
  return r;
}

CriterionResult lambda_mu(const AcceptanceOptions&) {
  CriterionResult r;
  const DomainSpec dom = find_benchmark("halfspace-time").make();
  std::vector<double> s;
  for (int i = 5; i <= 30; ++i) s.push_back(i);
  SeriesOptions so;
  so.H_max = 40;
  const ComparabilityReport rep = lambda_comparability(dom, 0.25, 0.5, 0.25, 0.5, s, so);
  r.pass = std::isfinite(rep.C) && rep.C > 0 && rep.c_spread <= kLambdaMuSpread;
  r.detail = "fitted C = " + fmt(rep.C) + ", spread over s = 5..30: " + fmt(rep.c_spread);
  r.data = to_json(rep);
  return r;
}

CriterionResult integral_series(const AcceptanceOptions&) {
  CriterionResult r;
  std::vector<SpaceTimePoint> probes;
  for (int j = 1; j <= 8; ++j) {
    const double d = std::pow(2.0, -j - 1);
    probes.push_back({SpacePoint{0.0}, d * d});
  }
  SeriesOptions so;
  int contradictions = 0;
  Json rows = Json::array();
  std::string summary;
  for (const auto& b : benchmark_registry()) {
    const DomainSpec dom = b.make();
    const IntegralReport ir = integral_test(dom, 0.25, 0.5, probes, QuadratureSpec{});
    const SeriesReport sr = divergence_verdict(series_table(dom, 0.25, 0.25, 0.5, SeriesVariant::kSufficient, so));
    const bool bad = ir.divergent && sr.verdict == Verdict::kConvergent;
    contradictions += bad;
    summary += (summary.empty() ? "" : ", ") + b.name + " " + (ir.divergent ? "div" : "bdd") + "/" +
               verdict_name(sr.verdict);
    rows.push_back({{"benchmark", b.name}, {"integral", to_json(ir)}, {"series", to_json(sr)}, {"contradiction", bad}});
  }
  r.pass = contradictions == 0;
  r.detail = std::to_string(contradictions) + " contradictions: " + summary;
  r.data = {{"benchmarks", rows}};
  return r;
}

CriterionResult bound_shape(const AcceptanceOptions&) {
  CriterionResult r;
  const DomainSpec dom = find_benchmark("cone").make();
  std::vector<SpaceTimePoint> probes;
  for (int j = 1; j <= 12; ++j) {
    const double d = std::pow(2.0, -j);
    probes.push_back({SpacePoint{0.0}, d * d});
  }
  BoundOptions bo;
  bo.resolution = 5;
  bo.L_max = 20;
  const Kernel k = surrogate_kernel(dom.metric(), 1.0, 0.25, 1.0);
  const BoundCheckReport rep = bound_check(dom, k, 0.25, 0.25, 0.5, 0.05, probes, bo);
  bool all = true;
  for (std::size_t i = 0; i < rep.Z.size(); ++i) all = all && rep.W[i] <= rep.C * std::exp(-rep.Z[i] / rep.C) * (1 + 1e-12);
  r.pass = rep.spearman <= kSpearman && std::isfinite(rep.C) && all;
  r.detail = "Spearman(Z, log W) = " + fmt(rep.spearman) + ", fitted C = " + fmt(rep.C) + " over 12 probes";
  r.data = to_json(rep);
  return r;
}

CriterionResult beta_monotonicity(const AcceptanceOptions&) {
  CriterionResult r;
  const DomainSpec dom = find_benchmark("cusp-loglog").make();
  const std::vector<double> betas = {0.5, 1.0, 2.0, 4.0};
  Json rows = Json::array();
  bool closed = true;
  std::string summary;
  for (bool use_cone : {true, false}) {
    std::vector<RegularityVerdict> v;
    for (double beta : betas) {
      ClassifyOptions co = heat_operator_options(beta);
      co.series.K_max = 20;
      co.series.H_max = 20;
      co.use_cone = use_cone;
      const Classification c = classify(dom, co);
      v.push_back(c.verdict);
      rows.push_back({{"beta", beta}, {"use_cone", use_cone}, {"verdict", verdict_name(c.verdict)},
                      {"basis", basis_name(c.basis)}});
      summary += (summary.empty() ? "" : ", ") + std::string(use_cone ? "" : "series ") + fmt(beta) + ":" +
                 verdict_name(c.verdict);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (v[i] == RegularityVerdict::kRegular && v[j] == RegularityVerdict::kIrregular) closed = false;
  }
  r.pass = closed;
  r.detail = summary;
  r.data = {{"runs", rows}};
  return r;
}

CriterionResult pde_sanity(const AcceptanceOptions& opt) {
  CriterionResult r;
  const DomainSpec slab = slab_domain();
  WalkConfig w;
  w.step = 1e-3;
  w.walkers = 4000;
  w.seed = derive_seed(opt.seed, 12);

  const DomainSpec cone = find_benchmark("cone").make();
  const SolutionEstimate c = pwb_solve(cone, [](const SpaceTimePoint&) { return 0.7; }, {SpacePoint{0.1}, 0.05}, w);
  const bool constant_ok = c.value == 0.7 && c.std_error == 0.0;

  const BoundaryData linear = [](const SpaceTimePoint& z) { return z.x[0]; };
  const SpaceTimePoint zl{SpacePoint{0.3}, 0.5};
  const SolutionEstimate l = pwb_solve(slab, linear, zl, w);
  const bool linear_ok = std::abs(l.value - 0.3) <= kStdErrors * l.std_error;

  // Bottom data: a hat of half width 1/2 centred at 0.
  const BoundaryData bump = [](const SpaceTimePoint& z) { return std::max(0.0, 1.0 - std::abs(z.x[0]) / 0.5); };
  const SpaceTimePoint zq{SpacePoint{0.2}, 0.1};
  const SolutionEstimate q = pwb_solve(slab, bump, zq, w);
  const HeatKernel heat(1, 1.0);
  double exact = 0;
  {
    const auto [x, wt] = gauss_legendre(64);
    for (double centre : {-0.25, 0.25})
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = centre + 0.25 * x[i];
        exact += 0.25 * wt[i] * heat({zq.x, zq.t}, {SpacePoint{xi}, 0.0}) * bump({SpacePoint{xi}, 0.0});
      }
  }
  const double bias = w.step;
  const bool quad_ok = std::abs(q.value - exact) <= kStdErrors * q.std_error + bias;

  WalkConfig half = w;
  half.step = w.step / 2;
  const SolutionEstimate l2 = pwb_solve(slab, linear, zl, half);
  const double shift = std::abs(l2.value - l.value);
  const bool halving_ok = shift <= kHalvingStdErrors * std::hypot(l.std_error, l2.std_error);

  r.pass = constant_ok && linear_ok && quad_ok && halving_ok;
  r.detail = std::string("constant ") + (constant_ok ? "exact" : "off") + "; linear " + fmt(l.value) + " vs 0.3 (se " +
             fmt(l.std_error) + "); quadrature " + fmt(q.value) + " vs " + fmt(exact) + " (se " + fmt(q.std_error) +
             "); halving shift " + fmt(shift);
  r.data = {{"constant", to_json(c)},         {"linear", to_json(l)},          {"quadrature", to_json(q)},
            {"quadrature_exact", exact},      {"linear_half_step", to_json(l2)}, {"halving_shift", shift}};
  return r;
}

}  // namespace

DomainSpec slab_domain() {
  DomainParams p;
  p.half_width = 10.0;
  p.s_lo = -1.0;
  p.s_hi = 1.0;
  return DomainSpec(Family::kHalfspaceTime, p, MetricSpace::euclidean(1), {SpacePoint{0.0}, 0.0});
}

std::string criterion_title(int id) {
  static const char* titles[kCriterionCount] = {
      "capacity LP duality gap",
      "capacity laws (monotone, subadditive, kernel order)",
      "flat-set capacity vs area",
      "euclidean exponent comparability",
      "parabolic ball capacity vs volume",
      "regular benchmark: halfspace-time",
      "irregular benchmark: cylinder-top",
      "lambda/mu series comparability",
      "integral test vs sufficient series",
      "Wiener function bound shape on the cone",
      "monotonicity in beta on the loglog cusp",
      "walk solver sanity",
  };
  if (id < 1 || id > kCriterionCount) throw InputError("no acceptance criterion " + std::to_string(id));
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn fns[kCriterionCount] = {lp_correctness,     capacity_laws,   flat_sets,         euclidean_comparability,
                                          ball_bound,         regular_benchmark, irregular_benchmark, lambda_mu,
                                          integral_series,    bound_shape,     beta_monotonicity, pde_sanity};
  const std::string title = criterion_title(id);
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fns[id - 1](opt);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.title = title;
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

Json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds},
          {"data", r.data}};
}

}  // namespace thermowiener
