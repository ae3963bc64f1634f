#include <algorithm>
#include <cmath>

#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"
#include "thermowiener/wiener.hpp"

namespace thermowiener {

std::string variant_name(SeriesVariant v) {
  switch (v) {
    case SeriesVariant::kSufficient: return "sufficient";
    case SeriesVariant::kNecessary: return "necessary";
    case SeriesVariant::kDee: return "dee";
  }
  return "unknown";
}

SeriesVariant parse_variant(const std::string& s) {
  for (auto v : {SeriesVariant::kSufficient, SeriesVariant::kNecessary, SeriesVariant::kDee})
    if (variant_name(v) == s) return v;
  throw InputError("unknown series variant '" + s + "'");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kDivergent: return "DIVERGENT";
    case Verdict::kConvergent: return "CONVERGENT";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "unknown";
}

std::vector<double> SeriesTable::row_sums() const {
  std::vector<double> r;
  r.reserve(terms.size());
  for (const auto& row : terms) {
    double s = 0;
    for (const auto& t : row) s += t.term;
    r.push_back(s);
  }
  return r;
}

std::vector<double> SeriesTable::partial_sums() const {
  std::vector<double> s = row_sums();
  for (std::size_t i = 1; i < s.size(); ++i) s[i] += s[i - 1];
  return s;
}

namespace {

void check_series_inputs(double lambda, double a, double b, const SeriesOptions& opt) {
  if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must be in (0, 1)");
  if (!(a > 0) || !(b > 0)) throw InputError("series exponents a, b must be positive");
  if (opt.K_max < 1 || opt.H_max < 1) throw InputError("series truncations must be >= 1");
}

// sum_{h > H} h^(Q/2) w^h, summed until the terms are negligible.
double level_tail(double w, double half_q, int H) {
  double s = 0;
  for (int h = H + 1; h < H + 100000; ++h) {
    const double t = std::pow(h, half_q) * std::pow(w, h);
    s += t;
    if (t < 1e-18 * s || t == 0.0) break;
  }
  return s;
}

}  // namespace

SeriesTable series_table(const DomainSpec& dom, double lambda, double a, double b, SeriesVariant variant,
                         const SeriesOptions& opt) {
  check_series_inputs(lambda, a, b, opt);
  const MetricSpace& metric = dom.metric();
  SeriesTable t;
  t.lambda = lambda;
  t.a = a;
  t.b = b;
  t.variant = variant;
  t.K_max = opt.K_max;
  t.H_max = opt.H_max;
  t.resolution = opt.resolution;
  const double cap_exponent = variant == SeriesVariant::kNecessary ? b : a;
  const double weight_exponent = variant == SeriesVariant::kNecessary ? a : b;
  const double w = std::pow(lambda, weight_exponent);
  const Kernel kernel = Kernel::gaussian(metric, cap_exponent);
  const RingVariant ring_variant = variant == SeriesVariant::kDee ? RingVariant::kDee : RingVariant::kOmega;
  const double half_q = metric.homogeneous_dimension() / 2;

  for (int k = 1; k <= opt.K_max; ++k) {
    std::vector<SeriesTerm> row;
    const double vol = metric.ball_volume(dom.z0().x, std::pow(lambda, 0.5 * k));
    for (int h = 1; h <= opt.H_max; ++h) {
      SeriesTerm term;
      term.k = k;
      term.h = h;
      term.ball_volume = vol;
      term.weight = std::pow(w, h);
      const RingSpec ring{lambda, k, h, ring_variant};
      const SetSample coarse = sample_set_and_measure(dom, ring, opt.resolution, false);
      term.n_atoms = coarse.size();
      if (!coarse.empty()) {
        const SetSample fine = sample_set_and_measure(dom, ring, opt.resolution + 1, false);
        try {
          const CapacityEstimate e =
              solve_capacity(make_problem(kernel, metric, coarse, fine, opt.tolerance));
          term.capacity = e.value;
          term.capacity_gap = e.gap;
        } catch (const ConvergenceError& err) {
          term.capacity = err.best_primal();
          term.capacity_gap = err.best_dual() - err.best_primal();
          term.failed = true;
          t.partial = true;
        }
      }
      term.term = term.weight * term.capacity / vol;
      if (term.term < kUnderflow) term.term = 0.0;
      if (term.term > 0)
        t.term_bound_C = std::max(t.term_bound_C, term.capacity / vol / std::pow(h, half_q));
      row.push_back(term);
    }
    t.terms.push_back(std::move(row));
  }
  t.h_tail_bound = opt.K_max * t.term_bound_C * level_tail(w, half_q, opt.H_max);
  return t;
}

SeriesReport divergence_verdict(const std::vector<double>& S, int H_max, const VerdictThresholds& th) {
  const int K = static_cast<int>(S.size());
  if (K < 20) throw InputError("divergence verdict needs K_max >= 20");
  SeriesReport r;
  r.partial_sums = S;
  r.K_max = K;
  r.H_max = H_max;
  std::vector<double> inc(K);
  for (int i = 0; i < K; ++i) inc[i] = S[i] - (i > 0 ? S[i - 1] : 0.0);
  for (double v : inc)
    if (v < -1e-12 * std::max(1.0, std::abs(S.back()))) throw InputError("partial sums must be nondecreasing");
  const int half = K / 2;
  std::vector<double> tail(inc.begin() + half, inc.end());
  r.max_increment = *std::max_element(inc.begin(), inc.end());
  r.median_tail_increment = median(tail);
  r.doubling_ratio = S[half - 1] > 0 ? S[K - 1] / S[half - 1] : 0.0;
  {
    std::vector<double> ks, ss;
    for (int i = half; i < K; ++i) {
      ks.push_back(i + 1);
      ss.push_back(S[i]);
    }
    r.growth_slope = fit_line(ks, ss).slope;
  }
  if (r.max_increment > 0 && r.median_tail_increment >= th.increment_fraction * r.max_increment &&
      r.doubling_ratio >= th.doubling_ratio) {
    r.verdict = Verdict::kDivergent;
    r.reason = "tail increments bounded below and partial sums keep growing";
    return r;
  }
  const double floor = std::max(kUnderflow, 1e-14 * S.back());
  std::vector<double> ks, logs;
  for (int i = half; i < K; ++i)
    if (inc[i] > floor) {
      ks.push_back(i + 1);
      logs.push_back(std::log(inc[i]));
    }
  if (ks.empty()) {
    r.zero_tail = true;
    r.geometric_ratio = 0.0;
    r.geometric_r2 = 1.0;
    r.geometric_tail_bound = 0.0;
    r.verdict = Verdict::kConvergent;
    r.reason = "tail increments vanish";
    return r;
  }
  if (ks.size() < 3) {
    r.reason = "too few nonzero tail increments for a geometric fit";
    return r;
  }
  const LineFit f = fit_line(ks, logs);
  r.geometric_ratio = std::exp(f.slope);
  r.geometric_r2 = f.r2;
  const double last = inc[K - 1] > floor ? inc[K - 1] : std::exp(f.intercept + f.slope * K);
  r.geometric_tail_bound =
      r.geometric_ratio < 1 ? last * r.geometric_ratio / (1 - r.geometric_ratio) : INFINITY;
  if (r.geometric_ratio <= th.geometric_ratio && f.r2 >= th.geometric_r2 &&
      r.geometric_tail_bound < th.tail_fraction * S.back()) {
    r.verdict = Verdict::kConvergent;
    r.reason = "tail increments decay geometrically";
  } else {
    r.reason = "neither growth nor geometric decay is established";
  }
  return r;
}

SeriesReport divergence_verdict(const SeriesTable& t, const VerdictThresholds& th) {
  SeriesReport r = divergence_verdict(t.partial_sums(), t.H_max, th);
  if (t.partial) {
    r.partial = true;
    r.reason += "; table is PARTIAL";
  }
  return r;
}

ComparabilityReport lambda_comparability(const DomainSpec& dom, double a, double b, double lambda, double mu,
                                         const std::vector<double>& s_values, const SeriesOptions& opt) {
  if (!(a > 0 && a < b)) throw InputError("comparability needs 0 < a < b");
  if (!(lambda > 0 && lambda < 1) || !(mu > 0 && mu < 1)) throw InputError("lambda and mu must be in (0, 1)");
  if (s_values.empty()) throw InputError("comparability needs at least one s value");
  ComparabilityReport r;
  r.lambda = lambda;
  r.mu = mu;
  r.sigma = std::log(lambda) / std::log(mu);
  r.s_values = s_values;
  const double s_max = *std::max_element(s_values.begin(), s_values.end());
  auto sums_for = [&](double lam, double reach) {
    SeriesOptions o = opt;
    o.K_max = std::max(1, static_cast<int>(std::floor(reach + 1e-9)));
    return series_table(dom, lam, a, b, SeriesVariant::kDee, o).partial_sums();
  };
  const auto S_lambda = sums_for(lambda, s_max);
  const auto S_mu = sums_for(mu, r.sigma * s_max);
  auto z_at = [](const std::vector<double>& S, double s) {
    const int k = static_cast<int>(std::floor(s + 1e-9));
    if (k < 1) return 0.0;
    return S[std::min<std::size_t>(k, S.size()) - 1];
  };
  double lo = INFINITY;
  for (double s : s_values) {
    const double zl = z_at(S_lambda, s), zm = z_at(S_mu, r.sigma * s);
    r.z_lambda.push_back(zl);
    r.z_mu.push_back(zm);
    const double c = zl / (zm + 1);
    r.c_per_s.push_back(c);
    r.C = std::max(r.C, c);
    if (c > 0) lo = std::min(lo, c);
  }
  r.c_spread = std::isfinite(lo) ? r.C / lo : 0.0;
  return r;
}

SandwichRow ring_sandwich(const DomainSpec& dom, double lambda, double a, double b, int k, int H, int resolution,
                          double tolerance) {
  if (H < 1) throw InputError("sandwich needs H >= 1");
  const MetricSpace& metric = dom.metric();
  const Kernel kernel = Kernel::gaussian(metric, a);
  std::vector<SetSample> coarse, fine;
  for (int j = 1; j <= H; ++j) {
    const RingSpec ring{lambda, k, j, RingVariant::kOmega};
    coarse.push_back(sample_set_and_measure(dom, ring, resolution, false));
    fine.push_back(sample_set_and_measure(dom, ring, resolution + 1, false));
  }
  const SetSample all = merge_samples(coarse);
  const auto constraints = forward_constraints(all, merge_samples(fine));
  auto capacity = [&](const SetSample& s) {
    if (s.empty()) return 0.0;
    CapacityProblem p = make_problem(kernel, metric, s, SetSample{}, tolerance);
    p.constraints = constraints;
    if (!p.local)
      for (auto& z : p.constraints) z = {metric.translate(s.anchor.x, z.x), s.anchor.t + z.t};
    return solve_capacity(p).value;
  };
  SandwichRow row;
  row.k = k;
  const double w = std::pow(lambda, b);
  double wh = 1;
  for (int h = 1; h <= H; ++h) {
    wh *= w;
    row.omega_sum += wh * capacity(coarse[h - 1]);
    const std::vector<SetSample> prefix(coarse.begin(), coarse.begin() + h);
    row.dee_sum += wh * capacity(merge_samples(prefix));
  }
  row.upper = row.omega_sum / (1 - w);
  const double slack = 2 * tolerance * std::max(row.dee_sum, row.upper);
  row.holds = row.omega_sum <= row.dee_sum + slack && row.dee_sum <= row.upper + slack;
  return row;
}

}  // namespace thermowiener
