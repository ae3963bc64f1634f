#pragma once

#include <variant>
#include <vector>

#include "thermowiener/domain.hpp"

namespace thermowiener {

// Spatial section {u : (u, -eta) excluded, d^2/eta <= log rho, cap} at
// local time -eta.
struct SectionTarget {
  double lambda = 0.25;
  double rho = 2.0;
  double eta = 0.01;
};

// (closed parabolic ball of radius lambda^(l/2) around z0, t <= t0) minus
// Omega.
struct BallComplementTarget {
  int l = 1;
  double lambda = 0.25;
};

using DomainTarget = std::variant<RingSpec, SectionTarget, BallComplementTarget>;

// Domain-free compact sets placed relative to an anchor point.
struct ParabolicBallSet {
  double radius = 0.25;
};
// lo..hi offsets, all at the anchor time.
struct FlatBoxSet {
  SpacePoint lo;
  SpacePoint hi;
};
struct SpaceTimeBoxSet {
  SpacePoint lo;
  SpacePoint hi;
  double s_lo = 0.0;
  double s_hi = 0.0;
};
using CompactSet = std::variant<ParabolicBallSet, FlatBoxSet, SpaceTimeBoxSet>;

// Grid discretization of a set. Points are offsets from anchor in the
// metric's group sense; weights are cell volumes (space-time, or spatial
// for sections).
struct SetSample {
  SpaceTimePoint anchor;
  std::vector<SpaceTimePoint> points;
  std::vector<double> weights;
  double measure_estimate = 0.0;
  double standard_error = 0.0;
  int resolution = 0;
  // Grid step in time; constraints sit this far after each point.
  double time_step = 0.0;
  bool spatial = false;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  SpaceTimePoint absolute(std::size_t i, const MetricSpace& m) const;
};

// Cell-centred grid at 2^resolution cells per axis (ring targets use polar
// coordinates: time, sqrt(d^2/eta), direction). standard_error is the
// discrepancy against the next coarser level.
SetSample sample_set_and_measure(const DomainSpec& dom, const DomainTarget& target, int resolution,
                                 bool with_error = true);

SetSample sample_compact(const MetricSpace& metric, const SpaceTimePoint& anchor,
                         const CompactSet& set, int resolution, bool with_error = true);

// Union of samples sharing an anchor; duplicate points are kept once.
SetSample merge_samples(const std::vector<SetSample>& parts);

}  // namespace thermowiener
