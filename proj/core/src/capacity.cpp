#include "thermowiener/capacity.hpp"

#include <cmath>

#include "thermowiener/errors.hpp"
#include "thermowiener/lp.hpp"

namespace thermowiener {

std::vector<SpaceTimePoint> forward_constraints(const SetSample& support, const SetSample& fine) {
  std::vector<SpaceTimePoint> c;
  c.reserve(support.size() + fine.size());
  for (const auto& z : support.points) c.push_back({z.x, z.t + support.time_step});
  for (const auto& z : fine.points) c.push_back({z.x, z.t + fine.time_step});
  return c;
}

CapacityProblem make_problem(const Kernel& kernel, const MetricSpace& metric, const SetSample& support,
                             const SetSample& fine, double tolerance) {
  if (!(support.time_step > 0) && !support.empty())
    throw InputError("support sample has no forward time step");
  CapacityProblem p;
  p.kernel = kernel;
  p.tolerance = tolerance;
  p.anchor = support.anchor;
  p.resolution = support.resolution;
  p.local = kernel.translation_invariant;
  p.support = support.points;
  p.constraints = forward_constraints(support, fine);
  if (!p.local) {
    auto to_abs = [&](SpaceTimePoint& z) {
      z = {metric.translate(support.anchor.x, z.x), support.anchor.t + z.t};
    };
    for (auto& z : p.support) to_abs(z);
    for (auto& z : p.constraints) to_abs(z);
  }
  return p;
}

CapacityEstimate solve_capacity(const CapacityProblem& p) {
  if (!(p.tolerance > 0)) throw InputError("capacity tolerance must be positive");
  CapacityEstimate e;
  e.resolution = p.resolution;
  e.n_atoms = p.support.size();
  e.n_constraints = p.constraints.size();
  if (p.support.empty()) return e;
  const int m = static_cast<int>(p.constraints.size());
  const int n = static_cast<int>(p.support.size());
  std::vector<double> A(static_cast<std::size_t>(m) * n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      const double k = p.kernel(p.constraints[j], p.support[i]);
      if (!std::isfinite(k)) throw InputError("kernel is not finite on a constraint/atom pair");
      A[static_cast<std::size_t>(j) * n + i] = k;
    }
  const PackingSolution s = solve_packing(A, m, n, p.tolerance);
  e.value = s.primal;
  e.mu = s.x;
  e.dual_value = s.dual;
  e.gap = s.dual - s.primal;
  e.iterations = s.iterations;
  e.max_constraint_potential = s.max_row_activity;
  return e;
}

double potential_eval(const CapacityEstimate& mu, const CapacityProblem& p, const SpaceTimePoint& z) {
  double s = 0;
  for (std::size_t i = 0; i < mu.mu.size(); ++i)
    if (mu.mu[i] > 0) s += mu.mu[i] * p.kernel(z, p.support[i]);
  return s;
}

CapacityProblem target_problem(const DomainSpec& dom, const DomainTarget& target, const Kernel& kernel,
                               int resolution, double tolerance) {
  const SetSample coarse = sample_set_and_measure(dom, target, resolution, false);
  if (coarse.spatial) throw InputError("section targets are spatial and carry no capacity");
  const SetSample fine = sample_set_and_measure(dom, target, resolution + 1, false);
  return make_problem(kernel, dom.metric(), coarse, fine, tolerance);
}

CapacityProblem compact_problem(const MetricSpace& metric, const SpaceTimePoint& anchor,
                                const CompactSet& set, const Kernel& kernel, int resolution,
                                double tolerance) {
  const SetSample coarse = sample_compact(metric, anchor, set, resolution, false);
  const SetSample fine = sample_compact(metric, anchor, set, resolution + 1, false);
  return make_problem(kernel, metric, coarse, fine, tolerance);
}

namespace {
template <class Build>
RefinementReport refine(int levels, int base, Build&& build) {
  if (levels < 2) throw InputError("refinement needs at least two levels");
  RefinementReport r;
  for (int l = 0; l < levels; ++l) {
    const auto [problem, measure] = build(base + l);
    r.levels.push_back(solve_capacity(problem));
    r.measures.push_back(measure);
  }
  const double a = r.levels[levels - 2].value, b = r.levels[levels - 1].value;
  r.last_relative_change = b > 0 ? std::abs(b - a) / b : (a > 0 ? 1.0 : 0.0);
  return r;
}
}  // namespace

RefinementReport refine_capacity(const DomainSpec& dom, const DomainTarget& target, const Kernel& kernel,
                                 int levels, int base_resolution, double tolerance) {
  return refine(levels, base_resolution, [&](int r) {
    const SetSample coarse = sample_set_and_measure(dom, target, r, false);
    const SetSample fine = sample_set_and_measure(dom, target, r + 1, false);
    return std::pair{make_problem(kernel, dom.metric(), coarse, fine, tolerance), coarse.measure_estimate};
  });
}

RefinementReport refine_compact(const MetricSpace& metric, const SpaceTimePoint& anchor,
                                const CompactSet& set, const Kernel& kernel, int levels,
                                int base_resolution, double tolerance) {
  return refine(levels, base_resolution, [&](int r) {
    const SetSample coarse = sample_compact(metric, anchor, set, r, false);
    const SetSample fine = sample_compact(metric, anchor, set, r + 1, false);
    return std::pair{make_problem(kernel, metric, coarse, fine, tolerance), coarse.measure_estimate};
  });
}

}  // namespace thermowiener
