#include <algorithm>
#include <cmath>
#include <tuple>

#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"
#include "thermowiener/wiener.hpp"

namespace thermowiener {

namespace {

void check_quadrature(const QuadratureSpec& q) {
  if (q.inner_nodes < 2 || q.outer_nodes < 1) throw InputError("quadrature needs at least 2 inner and 1 outer node");
  if (!(q.u_max > 0) || !(q.panel_width > 0)) throw InputError("quadrature ranges must be positive");
  if (q.resolution < 1 || q.resolution > 12) throw InputError("section resolution must be in [1, 12]");
}

// Integral over u > U of (1 + c_d u^(Q/2)) exp(-b u), on a 64-node panel
// covering 60/b beyond U; the remainder is below exp(-60).
double inner_tail(double U, double b, double c_d, double half_q) {
  const auto [x, w] = gauss_legendre(64);
  const double len = 60.0 / b;
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = U + 0.5 * len * (x[i] + 1);
    s += 0.5 * len * w[i] * (1 + c_d * std::pow(u, half_q)) * std::exp(-b * u);
  }
  return s;
}

class InnerIntegrand {
 public:
  InnerIntegrand(const DomainSpec& dom, double lambda, double b, const QuadratureSpec& q)
      : dom_(dom), lambda_(lambda), b_(b), q_(q) {
    std::tie(nodes_, weights_) = gauss_legendre(q.inner_nodes);
  }

  // Substitution w = sqrt(u), u = log rho, on w in [0, sqrt(u_max)].
  double operator()(double eta) {
    const double wmax = std::sqrt(q_.u_max);
    const double vol = dom_.metric().ball_volume(dom_.z0().x, std::sqrt(eta));
    double s = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double w = 0.5 * wmax * (nodes_[i] + 1);
      const double u = w * w;
      if (u <= 0) continue;
      const SetSample sec =
          sample_set_and_measure(dom_, SectionTarget{lambda_, std::exp(u), eta}, q_.resolution, false);
      ++evaluations;
      s += 0.5 * wmax * weights_[i] * (sec.measure_estimate / vol) * std::exp(-b_ * u) * 2 * w;
    }
    return s;
  }

  int evaluations = 0;

 private:
  const DomainSpec& dom_;
  double lambda_;
  double b_;
  QuadratureSpec q_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace

double inner_integral(const DomainSpec& dom, double lambda, double b, double eta, const QuadratureSpec& q) {
  check_quadrature(q);
  if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must be in (0, 1)");
  if (!(b > 0)) throw InputError("b must be positive");
  if (!(eta > 0 && eta <= lambda)) throw InputError("eta must be in (0, lambda]");
  InnerIntegrand f(dom, lambda, b, q);
  return f(eta);
}

IntegralReport integral_test(const DomainSpec& dom, double lambda, double b,
                             const std::vector<SpaceTimePoint>& probes, const QuadratureSpec& q) {
  check_quadrature(q);
  if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must be in (0, 1)");
  if (!(b > 0)) throw InputError("b must be positive");
  if (probes.empty()) throw InputError("integral test needs at least one probe");
  const MetricSpace& metric = dom.metric();
  IntegralReport r;
  r.lambda = lambda;
  r.b = b;
  r.quadrature = q;
  const SpaceTimePoint origin{SpacePoint(metric.dim()), 0.0};
  for (const auto& p : probes) {
    if (!dom.in_strip(dom.z0().t + p.t)) throw InputError("integral probe outside the strip");
    IntegralProbe ip;
    ip.offset = p;
    ip.dhat = metric.parabolic_dist(p, origin);
    if (!(ip.dhat > 0)) throw InputError("integral probe coincides with z0");
    r.probes.push_back(ip);
  }

  // Accumulate outward-in so each probe reuses the segment above it.
  std::vector<std::size_t> order(r.probes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return r.probes[i].dhat > r.probes[j].dhat; });
  InnerIntegrand inner(dom, lambda, b, q);
  const auto [gx, gw] = gauss_legendre(q.outer_nodes);
  double v_hi = std::log(lambda), acc = 0;
  for (auto idx : order) {
    const double v_lo = std::log(r.probes[idx].dhat * r.probes[idx].dhat);
    if (v_lo < v_hi) {
      const int panels = std::max(1, static_cast<int>(std::ceil((v_hi - v_lo) / q.panel_width)));
      const double width = (v_hi - v_lo) / panels;
      for (int p = 0; p < panels; ++p) {
        const double a0 = v_lo + p * width;
        for (std::size_t i = 0; i < gx.size(); ++i) {
          const double v = a0 + 0.5 * width * (gx[i] + 1);
          acc += 0.5 * width * gw[i] * inner(std::exp(v));
        }
      }
      v_hi = v_lo;
    }
    r.probes[idx].M = acc;
  }
  r.section_evaluations = inner.evaluations;
  r.inner_truncation_bound =
      inner_tail(q.u_max, b, metric.doubling_constant(), metric.homogeneous_dimension() / 2);
  {
    double vmin = std::log(lambda);
    for (const auto& p : r.probes) vmin = std::min(vmin, std::log(p.dhat * p.dhat));
    r.outer_truncation_bound = r.inner_truncation_bound * (std::log(lambda) - vmin);
  }

  for (const auto& p : r.probes)
    if (!std::isfinite(p.M)) {
      r.flagged = true;
      r.note = "quadrature produced a non-finite value";
      return r;
    }

  // Slope of M against log(1/dhat^2) over the closest half of the probes.
  std::vector<double> xs, ys;
  const std::size_t use = std::max<std::size_t>(2, (order.size() + 1) / 2);
  for (std::size_t j = order.size() >= use ? order.size() - use : 0; j < order.size(); ++j) {
    const auto& p = r.probes[order[j]];
    xs.push_back(-std::log(p.dhat * p.dhat));
    ys.push_back(p.M);
  }
  if (xs.size() >= 2) {
    r.slope = fit_line(xs, ys).slope;
    r.divergent = r.slope > 1e-3;
    r.note = r.divergent ? "M grows like a positive multiple of log(1/dhat^2)" : "M stays bounded";
  } else {
    r.flagged = true;
    r.note = "too few probes for a growth fit";
  }
  return r;
}

}  // namespace thermowiener
