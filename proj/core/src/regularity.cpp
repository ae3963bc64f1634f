#include "thermowiener/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "thermowiener/errors.hpp"

namespace thermowiener {

std::string verdict_name(RegularityVerdict v) {
  switch (v) {
    case RegularityVerdict::kRegular: return "REGULAR";
    case RegularityVerdict::kIrregular: return "IRREGULAR";
    case RegularityVerdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "unknown";
}

std::string basis_name(RegularityBasis b) {
  switch (b) {
    case RegularityBasis::kCone: return "cone";
    case RegularityBasis::kSufficientSeries: return "sufficient-series";
    case RegularityBasis::kNecessarySeriesConverges: return "necessary-series-converges";
    case RegularityBasis::kNone: return "none";
  }
  return "unknown";
}

namespace {

double excluded_fraction(const DomainSpec& dom, double radius, double s, int resolution) {
  const MetricSpace& m = dom.metric();
  const int n = m.dim();
  const SpacePoint hw = m.ball_halfwidths(radius);
  const int cells = 1 << resolution;
  const SpacePoint origin(n);
  double cell_vol = 1;
  for (int i = 0; i < n; ++i) cell_vol *= 2 * hw[i] / cells;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= cells;
  double excluded = 0;
  SpacePoint u(n);
  for (long code = 0; code < total; ++code) {
    long rest = code;
    for (int i = 0; i < n; ++i) {
      const long j = rest % cells;
      rest /= cells;
      u[i] = -hw[i] + (j + 0.5) * 2 * hw[i] / cells;
    }
    if (m.dist(origin, u) > radius) continue;
    if (dom.excluded_local(u, s)) excluded += cell_vol;
  }
  return std::clamp(excluded / m.ball_volume(dom.z0().x, radius), 0.0, 1.0);
}

}  // namespace

ConeReport cone_check(const DomainSpec& dom, const ConeOptions& opt) {
  if (!(opt.M0 > 0) || !(opt.r0 > 0)) throw InputError("cone check needs M0, r0 > 0");
  if (opt.r_levels < 4) throw InputError("cone check needs r_levels >= 4");
  if (opt.resolution < 1 || opt.resolution > 12) throw InputError("cone resolution must be in [1, 12]");
  const int n = dom.metric().dim();
  if (n * opt.resolution > 24) throw InputError("cone slice grid too large; lower cone.resolution");
  ConeReport r;
  r.M0 = opt.M0;
  r.r0 = opt.r0;
  r.theta_min = opt.theta_min;
  r.resolution = opt.resolution;
  r.theta = 1.0;
  for (int j = 0; j < opt.r_levels; ++j) {
    const double rad = opt.r0 * std::pow(2.0, -j);
    const double s = -rad * rad;
    if (!dom.in_strip(dom.z0().t + s)) {
      r.skipped.push_back(rad);
      continue;
    }
    const double th = excluded_fraction(dom, opt.M0 * rad, s, opt.resolution);
    r.radii.push_back(rad);
    r.theta_hat.push_back(th);
    r.theta = std::min(r.theta, th);
  }
  if (r.radii.empty()) r.theta = 0.0;
  r.satisfied = !r.radii.empty() && r.theta >= opt.theta_min;
  return r;
}

ClassifyOptions heat_operator_options(double beta) {
  if (!(beta > 0)) throw InputError("beta must be positive");
  ClassifyOptions o;
  o.a0 = o.b0 = beta / 4;
  o.a = o.a0;
  o.b = 2 * o.b0;
  return o;
}

Classification classify(const DomainSpec& dom, const ClassifyOptions& opt) {
  if (!(opt.a > 0 && opt.a <= opt.a0)) throw InputError("classify needs 0 < a <= a0");
  if (!(opt.b > opt.b0 && opt.b0 > 0)) throw InputError("classify needs b > b0 > 0");
  Classification c;
  c.options = opt;
  if (opt.use_cone) {
    c.cone = cone_check(dom, opt.cone);
    if (c.cone->satisfied) {
      c.verdict = RegularityVerdict::kRegular;
      c.basis = RegularityBasis::kCone;
      c.notes.push_back("exterior cone condition holds on the tested radii; series skipped");
      return c;
    }
  }
  c.sufficient_table = series_table(dom, opt.lambda, opt.a, opt.b, SeriesVariant::kSufficient, opt.series);
  c.sufficient = divergence_verdict(*c.sufficient_table, opt.thresholds);
  if (c.sufficient->verdict == Verdict::kDivergent && !c.sufficient->partial) {
    c.verdict = RegularityVerdict::kRegular;
    c.basis = RegularityBasis::kSufficientSeries;
    return c;
  }
  c.necessary_table = series_table(dom, opt.lambda, opt.a, opt.b0, SeriesVariant::kNecessary, opt.series);
  c.necessary = divergence_verdict(*c.necessary_table, opt.thresholds);
  if (c.necessary->verdict == Verdict::kConvergent && !c.necessary->partial) {
    c.verdict = RegularityVerdict::kIrregular;
    c.basis = RegularityBasis::kNecessarySeriesConverges;
    return c;
  }
  if (c.sufficient->partial || c.necessary->partial) c.notes.push_back("PARTIAL series table");
  c.notes.push_back("neither series is decisive");
  return c;
}

}  // namespace thermowiener
