#include <algorithm>
#include <cmath>

#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"
#include "thermowiener/wiener.hpp"

namespace thermowiener {

Kernel surrogate_kernel(const MetricSpace& metric, double beta, double b0, double Lambda) {
  if (metric.kind() == MetricKind::kEuclidean) {
    if (!(beta > 0)) throw InputError("beta must be positive");
    return Kernel::heat(metric.dim(), beta);
  }
  if (!(b0 > 0) || !(Lambda > 0)) throw InputError("surrogate kernel needs b0, Lambda > 0");
  Kernel g = Kernel::gaussian(metric, b0);
  const double scale = 1.0 / Lambda;
  auto eval = g.eval;
  return Kernel{[eval, scale](const SpaceTimePoint& z, const SpaceTimePoint& w) { return scale * eval(z, w); },
                g.name + "/" + format_real(Lambda), g.translation_invariant};
}

WienerFunctionEstimate wiener_function(const DomainSpec& dom, const Kernel& kernel, double lambda, double rho,
                                       int L_max, const std::vector<SpaceTimePoint>& probes, int resolution,
                                       double tolerance) {
  if (!(rho > 0 && rho < 1)) throw InputError("rho must be in (0, 1)");
  if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must be in (0, 1)");
  if (L_max < 1) throw InputError("L_max must be >= 1");
  const MetricSpace& metric = dom.metric();
  WienerFunctionEstimate est;
  est.rho = rho;
  est.L_max = L_max;
  est.lambda = lambda;
  est.probes = probes;
  est.kernel = kernel.name;
  est.W.assign(probes.size(), 0.0);
  double rl = 1;
  for (int l = 1; l <= L_max; ++l) {
    rl *= rho;
    std::vector<double> row(probes.size(), 1.0);
    const SetSample coarse = sample_set_and_measure(dom, BallComplementTarget{l, lambda}, resolution, false);
    if (!coarse.empty()) {
      const SetSample fine = sample_set_and_measure(dom, BallComplementTarget{l, lambda}, resolution + 1, false);
      const CapacityProblem p = make_problem(kernel, metric, coarse, fine, tolerance);
      const CapacityEstimate e = solve_capacity(p);
      for (std::size_t j = 0; j < probes.size(); ++j) {
        const SpaceTimePoint z = p.local ? probes[j] : dom.to_absolute(probes[j].x, probes[j].t);
        row[j] = 1.0 - std::clamp(potential_eval(e, p, z), 0.0, 1.0);
      }
    }
    for (std::size_t j = 0; j < probes.size(); ++j) est.W[j] += rl * row[j];
    est.one_minus_v.push_back(std::move(row));
  }
  est.truncation_bound = rl * rho / (1 - rho);
  return est;
}

BoundCheckReport bound_from_pairs(const std::vector<double>& Z, const std::vector<double>& W) {
  if (Z.size() != W.size() || Z.empty()) throw InputError("bound check needs matching nonempty Z and W");
  BoundCheckReport r;
  r.Z = Z;
  r.W = W;
  // C exp(-Z/C) is increasing in C for Z >= 0, so each probe has a least
  // admissible C found by bracketing and bisection.
  auto ok = [](double C, double z, double w) { return w <= C * std::exp(-z / C) * (1 + 1e-12); };
  r.C = 1.0;
  for (std::size_t i = 0; i < Z.size(); ++i) {
    if (Z[i] < 0 || W[i] < 0) throw InputError("bound check values must be nonnegative");
    double c = 1.0;
    if (!ok(1.0, Z[i], W[i])) {
      double lo = 1.0, hi = 2.0;
      while (!ok(hi, Z[i], W[i])) {
        lo = hi;
        hi *= 2;
        if (hi > 1e300) throw InputError("bound check values are not finite");
      }
      for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid, Z[i], W[i]) ? hi : lo) = mid;
      }
      c = hi;
    }
    r.c_per_probe.push_back(c);
    r.C = std::max(r.C, c);
  }
  std::vector<double> logw;
  for (double w : W) logw.push_back(std::log(std::max(w, kUnderflow)));
  r.spearman = spearman(Z, logw);
  r.holds = std::isfinite(r.C);
  return r;
}

BoundCheckReport bound_check(const DomainSpec& dom, const Kernel& v_kernel, double lambda, double a, double b,
                             double rho, const std::vector<SpaceTimePoint>& probes, const BoundOptions& opt) {
  if (probes.empty()) throw InputError("bound check needs probes");
  const MetricSpace& metric = dom.metric();
  const SpaceTimePoint origin{SpacePoint(metric.dim()), 0.0};
  std::vector<double> s_values;
  double s_max = 0;
  for (const auto& p : probes) {
    const double d = metric.parabolic_dist(p, origin);
    if (!(d > 0)) throw InputError("bound check probe coincides with z0");
    const double s = std::log(d * d) / std::log(lambda);
    s_values.push_back(s);
    s_max = std::max(s_max, s);
  }
  SeriesOptions so = opt.series;
  so.K_max = std::max(1, static_cast<int>(std::floor(s_max + 1e-9)));
  const std::vector<double> S = series_table(dom, lambda, a, b, SeriesVariant::kDee, so).partial_sums();
  std::vector<double> Z;
  for (double s : s_values) {
    const int k = static_cast<int>(std::floor(s + 1e-9));
    Z.push_back(k >= 1 ? S[std::min<std::size_t>(k, S.size()) - 1] : 0.0);
  }
  const WienerFunctionEstimate wf = wiener_function(dom, v_kernel, lambda, rho, opt.L_max, probes, opt.resolution,
                                                    opt.series.tolerance);
  BoundCheckReport r = bound_from_pairs(Z, wf.W);
  r.s_values = s_values;
  r.K_used = so.K_max;
  return r;
}

}  // namespace thermowiener
