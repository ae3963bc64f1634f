#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thermowiener/domain.hpp"

namespace thermowiener {

// Backward Euler-Maruyama walk for (1/beta) Laplacian - d/dt: each step
// adds sqrt(2 h / beta) times a standard normal per coordinate and moves
// time back by h.
struct WalkConfig {
  double beta = 1.0;
  double step = 1e-4;
  int walkers = 1000;
  std::uint64_t seed = 1;
  double max_time = 10.0;

  void validate() const;
};

// Data on R^{N+1}; only its values at exit points matter.
using BoundaryData = std::function<double(const SpaceTimePoint&)>;

struct ExitStatistics {
  double mean_exit_time = 0.0;
  double lateral = 0.0;   // left the bounding box sideways
  double bottom = 0.0;    // crossed the bottom of the bounding box
  double cap = 0.0;       // hit excluded set inside the box (caps, cones, cusps, slices)
  int unexited = 0;
};

struct SolutionEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int walkers = 0;  // walkers that exited and entered the mean
  ExitStatistics exits;
  std::vector<double> exit_times;  // in walker order
  bool unreliable = false;         // more than 1% of walkers never exited
};

// Monte Carlo estimate of the generalized solution at z (absolute
// coordinates, z in Omega). Exits are located by bisecting the last step
// down to h/64 in time; phi is read at the outside end.
SolutionEstimate pwb_solve(const DomainSpec& dom, const BoundaryData& phi, const SpaceTimePoint& z,
                           const WalkConfig& cfg);

// Probe j sits at offset (dilate(direction.x, r_j), direction.t r_j^2)
// from z0 with r_j = r_start ratio^j, so dhat shrinks geometrically.
struct ApproachPath {
  SpaceTimePoint direction;
  double r_start = 0.25;
  double ratio = 0.5;
};

struct HolderProbe {
  SpaceTimePoint offset;
  double dhat = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  double gap = 0.0;  // |u - phi(z0)|
  bool usable = false;
};

enum class HolderStatus { kFit, kNoDecay, kInsufficientProbes };
std::string holder_status_name(HolderStatus s);

struct HolderFit {
  std::vector<HolderProbe> probes;
  HolderStatus status = HolderStatus::kInsufficientProbes;
  double alpha0 = 0.0;
  double c = 0.0;
  double r2 = 0.0;
  std::string note;
};

// Fit log gap = log c + alpha0 log dhat over probes with gap > 3 std
// errors. NO-DECAY when the closest probe keeps a gap of at least 5 std
// errors and the closer half keeps at least half the largest gap.
HolderFit fit_holder(std::vector<HolderProbe> probes);

HolderFit boundary_holder(const DomainSpec& dom, const BoundaryData& phi, const ApproachPath& path,
                          int n_probes, const WalkConfig& cfg);

// Two-sample Kolmogorov-Smirnov statistic and the 1% critical value.
struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  bool same = false;
};
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

}  // namespace thermowiener
