#include "thermowiener/pde.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"

namespace thermowiener {

void WalkConfig::validate() const {
  if (!(beta > 0)) throw InputError("pde.beta must be positive");
  if (!(step > 0)) throw InputError("pde.step must be positive");
  if (walkers < 100) throw InputError("pde.walkers must be at least 100");
  if (!(max_time > 0)) throw InputError("pde.max_time must be positive");
}

std::string holder_status_name(HolderStatus s) {
  switch (s) {
    case HolderStatus::kFit: return "FIT";
    case HolderStatus::kNoDecay: return "NO-DECAY";
    case HolderStatus::kInsufficientProbes: return "INSUFFICIENT-PROBES";
  }
  return "unknown";
}

namespace {

constexpr int kBisections = 6;  // h / 64

struct Walk {
  const DomainSpec& dom;

  bool inside(const SpacePoint& x, double t) const { return dom.in_strip(t) && dom.contains({x, t}); }

  // Punctured domains remove a zero-thickness slice that no step endpoint
  // can land on, so crossings of s = 0 are tested directly.
  bool crosses_slice(const SpacePoint& x, double t, const SpacePoint& xn, double tn, SpaceTimePoint& hit) const {
    if (dom.family() != Family::kPunctured) return false;
    const double s0 = t - dom.z0().t, s1 = tn - dom.z0().t;
    if (!(s0 > 0 && s1 <= 0)) return false;
    const double w = s0 / (s0 - s1);
    SpacePoint p = x;
    for (int i = 0; i < x.dim; ++i) p[i] = x[i] + w * (xn[i] - x[i]);
    const SpaceTimePoint local = dom.to_local({p, dom.z0().t});
    if (dom.metric().dist(SpacePoint(x.dim), local.x) > dom.params().radius) return false;
    hit = {p, dom.z0().t};
    return true;
  }

  SpaceTimePoint bisect(SpacePoint a, double ta, SpacePoint b, double tb) const {
    for (int it = 0; it < kBisections; ++it) {
      SpacePoint m = a;
      for (int i = 0; i < a.dim; ++i) m[i] = 0.5 * (a[i] + b[i]);
      const double tm = 0.5 * (ta + tb);
      if (inside(m, tm)) {
        a = m;
        ta = tm;
      } else {
        b = m;
        tb = tm;
      }
    }
    return {b, tb};
  }
};

enum class ExitKind { kLateral, kBottom, kCap };

ExitKind classify_exit(const DomainSpec& dom, const LocalBox& box, const SpaceTimePoint& p) {
  const SpaceTimePoint u = dom.to_local(p);
  if (u.t <= box.s_lo || !dom.in_strip(p.t)) return ExitKind::kBottom;
  for (int i = 0; i < u.x.dim; ++i)
    if (u.x[i] <= box.lo[i] || u.x[i] >= box.hi[i]) return ExitKind::kLateral;
  return ExitKind::kCap;
}

}  // namespace

SolutionEstimate pwb_solve(const DomainSpec& dom, const BoundaryData& phi, const SpaceTimePoint& z,
                           const WalkConfig& cfg) {
  cfg.validate();
  if (dom.metric().kind() != MetricKind::kEuclidean)
    throw InputError("the walk solver needs a euclidean metric");
  const Walk walk{dom};
  if (!walk.inside(z.x, z.t)) throw InputError("walk start point is not in the domain");
  const LocalBox box = dom.local_bbox();
  const int n = z.x.dim;
  const double sigma = std::sqrt(2 * cfg.step / cfg.beta);
  const long max_steps = static_cast<long>(std::ceil(cfg.max_time / cfg.step));

  SolutionEstimate est;
  est.exit_times.reserve(cfg.walkers);
  double v0 = 0, dev = 0, dev2 = 0, time_sum = 0;
  int lateral = 0, bottom = 0, cap = 0;
  for (int w = 0; w < cfg.walkers; ++w) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(w)));
    std::normal_distribution<double> normal;
    SpacePoint x = z.x;
    double t = z.t;
    bool exited = false;
    SpaceTimePoint out;
    for (long k = 0; k < max_steps; ++k) {
      SpacePoint xn = x;
      for (int i = 0; i < n; ++i) xn[i] += sigma * normal(rng);
      const double tn = t - cfg.step;
      if (walk.crosses_slice(x, t, xn, tn, out)) {
        exited = true;
        break;
      }
      if (!walk.inside(xn, tn)) {
        out = walk.bisect(x, t, xn, tn);
        exited = true;
        break;
      }
      x = xn;
      t = tn;
    }
    if (!exited) {
      ++est.exits.unexited;
      continue;
    }
    const double v = phi(out);
    if (est.walkers == 0) v0 = v;
    dev += v - v0;
    dev2 += (v - v0) * (v - v0);
    ++est.walkers;
    const double tau = z.t - out.t;
    time_sum += tau;
    est.exit_times.push_back(tau);
    switch (classify_exit(dom, box, out)) {
      case ExitKind::kLateral: ++lateral; break;
      case ExitKind::kBottom: ++bottom; break;
      case ExitKind::kCap: ++cap; break;
    }
  }
  est.unreliable = est.exits.unexited > 0.01 * cfg.walkers;
  if (est.walkers == 0) {
    est.unreliable = true;
    return est;
  }
  const double m = est.walkers;
  // Deviations from the first value keep constant data exact.
  est.value = v0 + dev / m;
  const double var = est.walkers > 1 ? std::max(0.0, (dev2 - dev * dev / m) / (m - 1)) : 0.0;
  est.std_error = std::sqrt(var / m);
  est.exits.mean_exit_time = time_sum / m;
  est.exits.lateral = lateral / m;
  est.exits.bottom = bottom / m;
  est.exits.cap = cap / m;
  return est;
}

HolderFit fit_holder(std::vector<HolderProbe> probes) {
  HolderFit f;
  std::sort(probes.begin(), probes.end(), [](const auto& a, const auto& b) { return a.dhat > b.dhat; });
  double max_gap = 0;
  for (auto& p : probes) {
    p.usable = p.gap > 3 * p.std_error && p.gap > 0 && p.dhat > 0;
    max_gap = std::max(max_gap, p.gap);
  }
  f.probes = probes;
  if (probes.empty()) {
    f.note = "no probes";
    return f;
  }
  const auto& closest = probes.back();
  bool no_decay = closest.gap > 0 && closest.gap >= 5 * closest.std_error;
  for (std::size_t i = probes.size() / 2; i < probes.size() && no_decay; ++i)
    no_decay = probes[i].gap >= 0.5 * max_gap;
  if (no_decay) {
    f.status = HolderStatus::kNoDecay;
    f.note = "gap stays bounded away from zero toward z0";
    return f;
  }
  std::vector<double> lx, ly;
  for (const auto& p : probes)
    if (p.usable) {
      lx.push_back(std::log(p.dhat));
      ly.push_back(std::log(p.gap));
    }
  if (lx.size() < 4) {
    f.note = "fewer than 4 probes with gap above 3 std errors";
    return f;
  }
  const LineFit lf = fit_line(lx, ly);
  f.status = HolderStatus::kFit;
  f.alpha0 = lf.slope;
  f.c = std::exp(lf.intercept);
  f.r2 = lf.r2;
  return f;
}

HolderFit boundary_holder(const DomainSpec& dom, const BoundaryData& phi, const ApproachPath& path,
                          int n_probes, const WalkConfig& cfg) {
  if (n_probes < 1) throw InputError("boundary_holder needs probes");
  if (!(path.r_start > 0) || !(path.ratio > 0 && path.ratio < 1))
    throw InputError("approach path needs r_start > 0 and ratio in (0, 1)");
  const MetricSpace& m = dom.metric();
  const double target = phi(dom.z0());
  const SpaceTimePoint origin{SpacePoint(m.dim()), 0.0};
  std::vector<HolderProbe> probes;
  double r = path.r_start;
  for (int j = 0; j < n_probes; ++j, r *= path.ratio) {
    HolderProbe p;
    p.offset = {m.dilate(path.direction.x, r), path.direction.t * r * r};
    p.dhat = m.parabolic_dist(p.offset, origin);
    WalkConfig c = cfg;
    c.seed = derive_seed(cfg.seed, 0x9e37u + static_cast<std::uint64_t>(j));
    const SolutionEstimate e = pwb_solve(dom, phi, dom.to_absolute(p.offset.x, p.offset.t), c);
    p.value = e.value;
    p.std_error = e.std_error;
    p.gap = std::abs(e.value - target);
    probes.push_back(p);
  }
  return fit_holder(std::move(probes));
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw InputError("KS test needs two nonempty samples");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = x.size(), m = y.size();
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  KsResult r;
  r.statistic = d;
  r.critical = 1.628 * std::sqrt((n + m) / (n * m));
  r.same = d <= r.critical;
  return r;
}

}  // namespace thermowiener
