#pragma once

#include <vector>

#include "thermowiener/kernel.hpp"
#include "thermowiener/sampling.hpp"

namespace thermowiener {

// Finite packing problem max sum mu_i s.t. sum_i K(z_j, zeta_i) mu_i <= 1.
// With local = true all points are offsets from anchor (valid for
// translation invariant kernels); otherwise they are absolute.
struct CapacityProblem {
  Kernel kernel;
  std::vector<SpaceTimePoint> support;
  std::vector<SpaceTimePoint> constraints;
  double tolerance = 1e-6;
  SpaceTimePoint anchor;
  bool local = false;
  int resolution = 0;
};

struct CapacityEstimate {
  double value = 0.0;
  std::vector<double> mu;
  double dual_value = 0.0;
  double gap = 0.0;
  int resolution = 0;
  std::size_t n_atoms = 0;
  std::size_t n_constraints = 0;
  int iterations = 0;
  double max_constraint_potential = 0.0;
};

// Constraint grid: every support point shifted forward by the support time
// step, plus every point of the one-level-finer sample shifted forward by
// its own time step.
CapacityProblem make_problem(const Kernel& kernel, const MetricSpace& metric, const SetSample& support,
                             const SetSample& fine, double tolerance = 1e-6);
// Same constraint rule for an explicit atom list sharing the sample frame.
std::vector<SpaceTimePoint> forward_constraints(const SetSample& support, const SetSample& fine);

CapacityEstimate solve_capacity(const CapacityProblem& p);

// sum_i K(z, zeta_i) mu_i; z in the problem frame (offset when local).
double potential_eval(const CapacityEstimate& mu, const CapacityProblem& p, const SpaceTimePoint& z);

struct RefinementReport {
  std::vector<CapacityEstimate> levels;
  std::vector<double> measures;
  double last_relative_change = 0.0;
};

CapacityProblem target_problem(const DomainSpec& dom, const DomainTarget& target, const Kernel& kernel,
                               int resolution, double tolerance = 1e-6);
CapacityProblem compact_problem(const MetricSpace& metric, const SpaceTimePoint& anchor,
                                const CompactSet& set, const Kernel& kernel, int resolution,
                                double tolerance = 1e-6);

RefinementReport refine_capacity(const DomainSpec& dom, const DomainTarget& target, const Kernel& kernel,
                                 int levels, int base_resolution = 2, double tolerance = 1e-6);
RefinementReport refine_compact(const MetricSpace& metric, const SpaceTimePoint& anchor,
                                const CompactSet& set, const Kernel& kernel, int levels,
                                int base_resolution = 2, double tolerance = 1e-6);

}  // namespace thermowiener
