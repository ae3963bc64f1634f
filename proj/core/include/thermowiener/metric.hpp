#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "thermowiener/points.hpp"

namespace thermowiener {

enum class MetricKind { kEuclidean, kHeisenberg, kTable };
enum class VolumeMode { kAnalytic, kMonteCarlo };

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// One cell of a discretized unit sphere {d(0,u) = 1}. In the polar
// coordinates u = dilate(omega, r) the volume element is
// r^(Q-1) dr * weight.
struct DirectionCell {
  SpacePoint omega;
  double weight = 0.0;
};

// Point space (R^N, d, Lebesgue) with doubling data.
class MetricSpace {
 public:
  static MetricSpace euclidean(int n);
  static MetricSpace heisenberg();
  // Distance table on a 1-d grid of increasing nodes. distances is the
  // row-major nodes.size() x nodes.size() matrix. Volumes are always
  // Monte Carlo estimates over [nodes.front(), nodes.back()].
  static MetricSpace table(std::vector<double> nodes, std::vector<double> distances,
                           double doubling_constant, std::size_t mc_samples = 20000,
                           std::uint64_t seed = 1);

  // Switches ball volumes to hit-count estimates with the given seed.
  MetricSpace with_monte_carlo(std::size_t samples, std::uint64_t seed) const;

  MetricKind kind() const { return kind_; }
  VolumeMode volume_mode() const { return mode_; }
  int dim() const { return dim_; }
  double homogeneous_dimension() const { return q_; }
  double doubling_constant() const { return c_d_; }
  std::size_t mc_samples() const { return mc_samples_; }
  std::uint64_t mc_seed() const { return mc_seed_; }
  std::string name() const;

  // Table metrics carry no certified doubling or segment data.
  bool assumptions_verified() const { return kind_ != MetricKind::kTable; }
  bool translation_invariant() const { return kind_ != MetricKind::kTable; }
  // Ring sampling in polar coordinates needs a gauge with dilations.
  bool has_polar_coordinates() const { return kind_ != MetricKind::kTable; }

  double dist(const SpacePoint& x, const SpacePoint& y) const;
  double parabolic_dist(const SpaceTimePoint& z, const SpaceTimePoint& w) const;

  // Group translation base * offset, and its inverse base^-1 * x.
  SpacePoint translate(const SpacePoint& base, const SpacePoint& offset) const;
  SpacePoint relative(const SpacePoint& base, const SpacePoint& x) const;
  // Homogeneous dilation with d(0, dilate(u, r)) = r d(0, u).
  SpacePoint dilate(const SpacePoint& u, double r) const;
  // Coordinate half-widths of a box containing B(0, r).
  SpacePoint ball_halfwidths(double r) const;

  double ball_volume(const SpacePoint& x, double r) const;
  VolumeEstimate ball_volume_estimate(const SpacePoint& x, double r) const;
  // |B(0,1)| for the analytic kinds.
  double unit_ball_volume() const;

  // Approximately n cells per angular coordinate; N = 1 always gives the
  // two directions -1 and +1.
  std::vector<DirectionCell> direction_grid(int n) const;

  // Spatial extent for table metrics, used when sampling.
  double table_lo() const;
  double table_hi() const;

 private:
  struct Table {
    std::vector<double> nodes;
    std::vector<double> distances;
  };

  MetricKind kind_ = MetricKind::kEuclidean;
  VolumeMode mode_ = VolumeMode::kAnalytic;
  int dim_ = 1;
  double q_ = 1.0;
  double c_d_ = 2.0;
  double unit_volume_ = 2.0;
  std::size_t mc_samples_ = 0;
  std::uint64_t mc_seed_ = 0;
  std::shared_ptr<const Table> table_;

  void check_dim(const SpacePoint& x) const;
  VolumeEstimate monte_carlo_volume(const SpacePoint& x, double r) const;
};

// Volume of the Koranyi unit ball, computed once by quadrature and cached.
double koranyi_unit_ball_volume();

}  // namespace thermowiener
