#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "thermowiener/metric.hpp"

namespace thermowiener {

enum class Family {
  kHalfspaceTime,
  kSpatialHalfspace,
  kCylinder,
  kCone,
  kCusp,
  kPunctured,
  kMask,
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

// Width rho(sigma) of the excluded cusp at depth sigma = t0 - t.
struct CuspProfile {
  enum class Kind { kPower, kLogLog };
  Kind kind = Kind::kLogLog;
  double p = 1.0;  // power exponent
  double c = 1.0;  // loglog coefficient

  double width(double sigma) const;
};

// Voxel grid over (x_1..x_N, t). Voxel i covers
// [origin + i*spacing, origin + (i+1)*spacing] in every axis.
class MaskGrid {
 public:
  MaskGrid(int space_dim, std::vector<int> extents, std::vector<double> spacing,
           std::vector<double> origin, std::vector<unsigned char> bits);

  static MaskGrid read(const std::string& path);
  static MaskGrid parse(const std::string& text);
  std::string serialize() const;

  int space_dim() const { return n_; }
  // Open-set convention: the point must be interior to the union of set
  // voxels. On a shared face every adjacent voxel has to be set.
  bool open_at(const SpacePoint& x, double t) const;
  bool voxel(const std::vector<int>& index) const;
  double lo(int axis) const { return origin_[axis]; }
  double hi(int axis) const { return origin_[axis] + extents_[axis] * spacing_[axis]; }

 private:
  int n_;
  std::vector<int> extents_;
  std::vector<double> spacing_;
  std::vector<double> origin_;
  std::vector<unsigned char> bits_;
};

// Family parameters. Lengths and times are offsets from z0 (local frame).
struct DomainParams {
  double half_width = 1.0;  // |u_i| < half_width for the box-based families
  double s_lo = -1.0;       // local time range (s_lo, s_hi) of the box
  double s_hi = 1.0;
  double radius = 0.4;      // cylinder and punctured disk radius
  SpacePoint center;        // cylinder axis offset (defaults to 0)
  double M0 = 1.0;          // cone aperture scale
  double theta = 0.25;      // cone excluded fraction
  CuspProfile cusp;
  std::shared_ptr<const MaskGrid> mask;
};

struct Strip {
  double T1 = -2.0;
  double T2 = 2.0;
};

struct LocalBox {
  SpacePoint lo;
  SpacePoint hi;
  double s_lo = 0.0;
  double s_hi = 0.0;
};

// Open space-time set Omega with a boundary point z0.
//
//   halfspace-time     box and s > 0
//   spatial-halfspace  box and u_1 > 0
//   cylinder           d(u, center) < radius and s_lo < s < s_hi
//   cone               box minus {s <= 0, d(0,u) <= M0 theta^(1/Q) sqrt(-s)}
//   cusp               box minus {s <= 0, d(0,u) <= cusp.width(-s)}
//   punctured          box minus {s = 0, d(0,u) <= radius}
//   mask               voxel lookup in absolute coordinates
//
// where u = x0^-1 x, s = t - t0, and "box" is |u_i| < half_width,
// s_lo < s < s_hi.
class DomainSpec {
 public:
  DomainSpec(Family family, DomainParams params, MetricSpace metric, SpaceTimePoint z0,
             Strip strip = {});

  Family family() const { return family_; }
  const DomainParams& params() const { return params_; }
  const MetricSpace& metric() const { return metric_; }
  const SpaceTimePoint& z0() const { return z0_; }
  const Strip& strip() const { return strip_; }
  LocalBox local_bbox() const;

  bool in_strip(double t) const { return t > strip_.T1 && t < strip_.T2; }
  // Throws InputError outside the strip.
  bool contains(const SpaceTimePoint& z) const;
  // Membership of z0 translated by (u, s). No strip check.
  bool contains_local(const SpacePoint& u, double s) const;
  // (u, s) lies in S minus Omega.
  bool excluded_local(const SpacePoint& u, double s) const;

  SpaceTimePoint to_absolute(const SpacePoint& u, double s) const;
  SpaceTimePoint to_local(const SpaceTimePoint& z) const;

  // Checks z0 outside Omega, Omega meeting every sampled neighbourhood of
  // z0 and the bounding box inside the strip. Throws InputError.
  void validate() const;

 private:
  Family family_;
  DomainParams params_;
  MetricSpace metric_;
  SpaceTimePoint z0_;
  Strip strip_;
  double cone_width_ = 0.0;

  bool in_box(const SpacePoint& u, double s) const;
};

enum class RingVariant { kOmega, kDee };

struct RingSpec {
  double lambda = 0.25;
  int k = 1;
  int h = 1;
  RingVariant variant = RingVariant::kOmega;
};

void validate_ring(const RingSpec& r);
// The four defining conditions of the ring set, evaluated at zeta.
bool ring_membership(const DomainSpec& dom, const RingSpec& ring, const SpaceTimePoint& zeta);
bool ring_membership_local(const DomainSpec& dom, const RingSpec& ring, const SpacePoint& u,
                           double s);

enum class KnownStatus { kRegular, kIrregular };

struct BenchmarkEntry {
  std::string name;
  std::string description;
  KnownStatus status;
  std::function<DomainSpec()> make;
};

struct FamilyDoc {
  std::string name;
  std::string parameters;
};

// Named benchmark domains on euclidean(1) with z0 = (0, 0).
const std::vector<BenchmarkEntry>& benchmark_registry();
const BenchmarkEntry& find_benchmark(const std::string& name);
std::vector<FamilyDoc> family_docs();

}  // namespace thermowiener
