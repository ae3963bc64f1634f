#include "thermowiener/domain.hpp"

#include <cmath>

#include "thermowiener/errors.hpp"

namespace thermowiener {

std::string family_name(Family f) {
  switch (f) {
    case Family::kHalfspaceTime: return "halfspace-time";
    case Family::kSpatialHalfspace: return "spatial-halfspace";
    case Family::kCylinder: return "cylinder";
    case Family::kCone: return "cone";
    case Family::kCusp: return "cusp";
    case Family::kPunctured: return "punctured";
    case Family::kMask: return "mask";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::kHalfspaceTime, Family::kSpatialHalfspace, Family::kCylinder,
                   Family::kCone, Family::kCusp, Family::kPunctured, Family::kMask})
    if (family_name(f) == name) return f;
  throw InputError("unknown domain family '" + name + "'");
}

double CuspProfile::width(double sigma) const {
  if (!(sigma > 0)) return 0.0;
  if (kind == Kind::kPower) return std::pow(sigma, p);
  if (sigma >= std::exp(-1.0)) return 0.0;
  const double s = std::max(sigma, 1e-12);
  return std::sqrt(c * sigma * std::log(std::log(1.0 / s)));
}

DomainSpec::DomainSpec(Family family, DomainParams params, MetricSpace metric, SpaceTimePoint z0,
                       Strip strip)
    : family_(family),
      params_(std::move(params)),
      metric_(std::move(metric)),
      z0_(z0),
      strip_(strip) {
  const int n = metric_.dim();
  if (z0_.x.dim != n) throw InputError("z0 dimension does not match metric");
  if (!(strip_.T1 < strip_.T2)) throw InputError("strip needs T1 < T2");
  if (!in_strip(z0_.t)) throw InputError("z0 lies outside the strip");
  if (params_.center.dim == 0) params_.center = SpacePoint(n);
  if (params_.center.dim != n) throw InputError("cylinder center dimension does not match metric");
  if (!(params_.half_width > 0)) throw InputError("domain half_width must be positive");
  if (!(params_.s_lo < params_.s_hi)) throw InputError("domain needs s_lo < s_hi");
  switch (family_) {
    case Family::kCylinder:
    case Family::kPunctured:
      if (!(params_.radius > 0)) throw InputError("domain radius must be positive");
      break;
    case Family::kCone:
      if (!(params_.M0 > 0)) throw InputError("cone M0 must be positive");
      if (!(params_.theta > 0 && params_.theta <= 1)) throw InputError("cone theta must be in (0, 1]");
      cone_width_ = params_.M0 * std::pow(params_.theta, 1.0 / metric_.homogeneous_dimension());
      break;
    case Family::kCusp:
      if (params_.cusp.kind == CuspProfile::Kind::kPower && !(params_.cusp.p > 0.5))
        throw InputError("cusp power profile needs p > 1/2");
      if (params_.cusp.kind == CuspProfile::Kind::kLogLog && !(params_.cusp.c > 0))
        throw InputError("cusp loglog profile needs c > 0");
      break;
    case Family::kMask:
      if (!params_.mask) throw InputError("mask family needs a mask grid");
      if (params_.mask->space_dim() != n) throw InputError("mask dimension does not match metric");
      if (metric_.kind() == MetricKind::kHeisenberg)
        throw InputError("mask domains are defined on euclidean or table metrics");
      break;
    default: break;
  }
}

bool DomainSpec::in_box(const SpacePoint& u, double s) const {
  if (!(s > params_.s_lo && s < params_.s_hi)) return false;
  for (int i = 0; i < u.dim; ++i)
    if (!(std::abs(u[i]) < params_.half_width)) return false;
  return true;
}

bool DomainSpec::contains_local(const SpacePoint& u, double s) const {
  switch (family_) {
    case Family::kHalfspaceTime: return s > 0 && in_box(u, s);
    case Family::kSpatialHalfspace: return u[0] > 0 && in_box(u, s);
    case Family::kCylinder:
      return s > params_.s_lo && s < params_.s_hi && metric_.dist(u, params_.center) < params_.radius;
    case Family::kCone:
      if (!in_box(u, s)) return false;
      return !(s <= 0 && metric_.dist(SpacePoint(u.dim), u) <= cone_width_ * std::sqrt(-s));
    case Family::kCusp:
      if (!in_box(u, s)) return false;
      return !(s <= 0 && metric_.dist(SpacePoint(u.dim), u) <= params_.cusp.width(-s));
    case Family::kPunctured:
      if (!in_box(u, s)) return false;
      return !(s == 0 && metric_.dist(SpacePoint(u.dim), u) <= params_.radius);
    case Family::kMask: {
      const SpaceTimePoint z = to_absolute(u, s);
      return params_.mask->open_at(z.x, z.t);
    }
  }
  return false;
}

bool DomainSpec::excluded_local(const SpacePoint& u, double s) const {
  return in_strip(z0_.t + s) && !contains_local(u, s);
}

bool DomainSpec::contains(const SpaceTimePoint& z) const {
  if (!in_strip(z.t)) throw InputError("point lies outside the strip");
  const SpaceTimePoint l = to_local(z);
  return contains_local(l.x, l.t);
}

SpaceTimePoint DomainSpec::to_absolute(const SpacePoint& u, double s) const {
  return {metric_.translate(z0_.x, u), z0_.t + s};
}

SpaceTimePoint DomainSpec::to_local(const SpaceTimePoint& z) const {
  return {metric_.relative(z0_.x, z.x), z.t - z0_.t};
}

LocalBox DomainSpec::local_bbox() const {
  const int n = metric_.dim();
  LocalBox b{SpacePoint(n), SpacePoint(n), params_.s_lo, params_.s_hi};
  switch (family_) {
    case Family::kCylinder: {
      const SpacePoint h = metric_.ball_halfwidths(params_.radius);
      for (int i = 0; i < n; ++i) {
        b.lo[i] = params_.center[i] - h[i];
        b.hi[i] = params_.center[i] + h[i];
      }
      if (metric_.kind() == MetricKind::kHeisenberg) {
        // Translation shears the vertical coordinate.
        const double shear = 0.5 * (std::abs(params_.center[0]) + std::abs(params_.center[1])) *
                             params_.radius;
        b.lo[2] -= shear;
        b.hi[2] += shear;
      }
      return b;
    }
    case Family::kMask: {
      const auto& m = *params_.mask;
      for (int i = 0; i < n; ++i) {
        b.lo[i] = m.lo(i) - z0_.x[i];
        b.hi[i] = m.hi(i) - z0_.x[i];
      }
      b.s_lo = m.lo(n) - z0_.t;
      b.s_hi = m.hi(n) - z0_.t;
      return b;
    }
    default:
      for (int i = 0; i < n; ++i) {
        b.lo[i] = -params_.half_width;
        b.hi[i] = params_.half_width;
      }
      if (family_ == Family::kHalfspaceTime) b.s_lo = std::max(0.0, params_.s_lo);
      return b;
  }
}

void DomainSpec::validate() const {
  const int n = metric_.dim();
  const SpacePoint origin(n);
  if (contains_local(origin, 0.0)) throw InputError("z0 lies inside the domain");
  const LocalBox b = local_bbox();
  if (!(z0_.t + b.s_lo > strip_.T1 && z0_.t + b.s_hi < strip_.T2))
    throw InputError("domain closure is not inside the strip");
  // Every sampled parabolic neighbourhood must meet the domain.
  const int m = 6;
  for (double r : {1e-1, 1e-2, 1e-3}) {
    const SpacePoint hw = metric_.ball_halfwidths(r);
    bool hit = false;
    const int cells = static_cast<int>(std::pow(2 * m + 1, n + 1));
    for (int code = 0; code < cells && !hit; ++code) {
      int rest = code;
      SpacePoint u(n);
      for (int i = 0; i < n; ++i) {
        u[i] = hw[i] * static_cast<double>(rest % (2 * m + 1) - m) / m;
        rest /= 2 * m + 1;
      }
      const double s = r * r * static_cast<double>(rest - m) / m;
      if (metric_.parabolic_dist({u, s}, {origin, 0.0}) > r) continue;
      hit = contains_local(u, s);
    }
    if (!hit) throw InputError("domain misses a neighbourhood of z0; z0 is not a boundary point");
  }
}

void validate_ring(const RingSpec& r) {
  if (!(r.lambda > 0 && r.lambda < 1)) throw InputError("ring lambda must be in (0, 1)");
  if (r.k < 1 || r.h < 1) throw InputError("ring indices k, h must be positive");
}

bool ring_membership_local(const DomainSpec& dom, const RingSpec& ring, const SpacePoint& u,
                           double s) {
  const double eta = -s;
  const double lam = ring.lambda;
  if (!(eta >= std::pow(lam, ring.k + 1) && eta <= std::pow(lam, ring.k))) return false;
  const double d = dom.metric().dist(SpacePoint(u.dim), u);
  const double band = d * d / eta;
  const double level = std::log(1.0 / lam);
  if (band > ring.h * level) return false;
  if (ring.variant == RingVariant::kOmega && band < (ring.h - 1) * level) return false;
  if (d * d * d * d + eta * eta > lam * lam) return false;
  return dom.excluded_local(u, s);
}

bool ring_membership(const DomainSpec& dom, const RingSpec& ring, const SpaceTimePoint& zeta) {
  validate_ring(ring);
  const SpaceTimePoint l = dom.to_local(zeta);
  return ring_membership_local(dom, ring, l.x, l.t);
}

namespace {

DomainSpec line_domain(Family f, DomainParams p) {
  return DomainSpec(f, std::move(p), MetricSpace::euclidean(1), {SpacePoint{0.0}, 0.0}, {-2.0, 2.0});
}

std::vector<BenchmarkEntry> make_registry() {
  std::vector<BenchmarkEntry> r;
  r.push_back({"halfspace-time", "Omega = {0 < t < 1, |x| < 1}, z0 on the initial slice",
               KnownStatus::kRegular, [] {
                 DomainParams p;
                 p.s_lo = -1.0;
                 p.s_hi = 1.0;
                 return line_domain(Family::kHalfspaceTime, p);
               }});
  r.push_back({"spatial-halfspace", "Omega = {x > 0, |x| < 1, -1 < t < 1}",
               KnownStatus::kRegular, [] { return line_domain(Family::kSpatialHalfspace, {}); }});
  r.push_back({"cylinder-top", "Omega = {|x| < 0.4, -1 < t < 0}, z0 at the centre of the top",
               KnownStatus::kIrregular, [] {
                 DomainParams p;
                 p.radius = 0.4;
                 p.s_lo = -1.0;
                 p.s_hi = 0.0;
                 return line_domain(Family::kCylinder, p);
               }});
  r.push_back({"cone", "box minus the exterior cone |x| <= M0 theta sqrt(-t), M0 = 1, theta = 1/4",
               KnownStatus::kRegular, [] {
                 DomainParams p;
                 p.s_lo = -0.25;
                 return line_domain(Family::kCone, p);
               }});
  r.push_back({"cusp-loglog", "box minus the cusp |x| <= sqrt(c s log log(1/s)), c = 1/2",
               KnownStatus::kRegular, [] {
                 DomainParams p;
                 p.s_lo = -0.3;
                 p.cusp = {CuspProfile::Kind::kLogLog, 1.0, 0.5};
                 return line_domain(Family::kCusp, p);
               }});
  r.push_back({"punctured", "box minus the closed segment |x| <= 0.3 in the slice t = 0",
               KnownStatus::kIrregular, [] {
                 DomainParams p;
                 p.radius = 0.3;
                 return line_domain(Family::kPunctured, p);
               }});
  return r;
}

}  // namespace

const std::vector<BenchmarkEntry>& benchmark_registry() {
  static const std::vector<BenchmarkEntry> registry = make_registry();
  return registry;
}

const BenchmarkEntry& find_benchmark(const std::string& name) {
  for (const auto& e : benchmark_registry())
    if (e.name == name) return e;
  throw InputError("unknown benchmark '" + name + "'");
}

std::vector<FamilyDoc> family_docs() {
  const std::string box = "domain.half_width, domain.s_lo, domain.s_hi";
  return {
      {"halfspace-time", box + " (Omega keeps s > 0)"},
      {"spatial-halfspace", box + " (Omega keeps u_1 > 0)"},
      {"cylinder", "domain.radius, domain.center, domain.s_lo, domain.s_hi"},
      {"cone", box + ", domain.M0, domain.theta"},
      {"cusp", box + ", domain.profile (power|loglog), domain.p, domain.c"},
      {"punctured", box + ", domain.radius"},
      {"mask", "domain.mask_file (MASK 1 voxel grid, absolute coordinates)"},
  };
}

}  // namespace thermowiener
