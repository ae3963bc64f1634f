#include "thermowiener/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "thermowiener/errors.hpp"

namespace thermowiener {

SpaceTimePoint SetSample::absolute(std::size_t i, const MetricSpace& m) const {
  return {m.translate(anchor.x, points[i].x), anchor.t + points[i].t};
}

namespace {

void check_resolution(int resolution) {
  if (resolution < 1 || resolution > 12) throw InputError("resolution must be in [1, 12]");
}

void push(SetSample& out, const SpacePoint& u, double s, double w) {
  out.points.push_back({u, s});
  out.weights.push_back(w);
  out.measure_estimate += w;
}

// Calls f(centre, volume) for every cell of a cell-centred grid on the box
// lo..hi with `cells` cells per axis, last axis fastest.
template <class F>
void for_each_cell(const std::vector<double>& lo, const std::vector<double>& hi, int cells, F&& f) {
  const std::size_t axes = lo.size();
  std::vector<double> width(axes);
  double vol = 1;
  for (std::size_t a = 0; a < axes; ++a) {
    width[a] = (hi[a] - lo[a]) / cells;
    vol *= width[a];
  }
  std::vector<int> idx(axes, 0);
  std::vector<double> c(axes);
  while (true) {
    for (std::size_t a = 0; a < axes; ++a) c[a] = lo[a] + (idx[a] + 0.5) * width[a];
    f(c, vol);
    std::size_t a = axes;
    while (a > 0) {
      --a;
      if (++idx[a] < cells) break;
      idx[a] = 0;
      if (a == 0) return;
    }
  }
}

SetSample ring_polar(const DomainSpec& dom, const RingSpec& ring, int r) {
  const MetricSpace& m = dom.metric();
  const double lam = ring.lambda;
  const double level = std::log(1.0 / lam);
  const double q = m.homogeneous_dimension();
  const int cells = 1 << r;
  const auto dirs = m.direction_grid(std::max(2, 1 << (r - 1)));
  const double e_lo = std::pow(lam, ring.k + 1), e_hi = std::pow(lam, ring.k);
  const double de = (e_hi - e_lo) / cells;
  SetSample out;
  out.anchor = dom.z0();
  out.resolution = r;
  out.time_step = de;
  for (int i = 0; i < cells; ++i) {
    const double ea = e_lo + i * de, eb = ea + de, ec = ea + 0.5 * de;
    if (!(ec < lam)) continue;
    const double s_cap = std::sqrt(lam * lam - ec * ec) / ec;
    const double s_lo = ring.variant == RingVariant::kOmega ? (ring.h - 1) * level : 0.0;
    const double s_top = std::min(ring.h * level, s_cap);
    if (!(s_top > s_lo)) continue;
    const double time_factor = (std::pow(eb, q / 2 + 1) - std::pow(ea, q / 2 + 1)) / (q / 2 + 1);
    // Cells are uniform in sqrt(s) = d / sqrt(eta) so thin sets hugging the
    // axis are resolved.
    const double g_lo = std::sqrt(s_lo), dg = (std::sqrt(s_top) - g_lo) / cells;
    for (int j = 0; j < cells; ++j) {
      const double ga = g_lo + j * dg, gb = ga + dg, gc = ga + 0.5 * dg;
      const double level_factor = (std::pow(gb, q) - std::pow(ga, q)) / q;
      const double radius = gc * std::sqrt(ec);
      for (const auto& dir : dirs) {
        const SpacePoint u = m.dilate(dir.omega, radius);
        if (!ring_membership_local(dom, ring, u, -ec)) continue;
        push(out, u, -ec, dir.weight * time_factor * level_factor);
      }
    }
  }
  return out;
}

// Fallback for metrics without dilations: Cartesian cells over the table
// range in space and the time band.
SetSample ring_cartesian(const DomainSpec& dom, const RingSpec& ring, int r) {
  const MetricSpace& m = dom.metric();
  const double x0 = dom.z0().x[0];
  const double e_lo = std::pow(ring.lambda, ring.k + 1), e_hi = std::pow(ring.lambda, ring.k);
  SetSample out;
  out.anchor = dom.z0();
  out.resolution = r;
  const int tcells = 1 << r, xcells = 1 << (r + 3);
  out.time_step = (e_hi - e_lo) / tcells;
  const double xlo = m.table_lo() - x0, xhi = m.table_hi() - x0;
  const double dx = (xhi - xlo) / xcells;
  for (int i = 0; i < tcells; ++i) {
    const double ec = e_lo + (i + 0.5) * out.time_step;
    for (int j = 0; j < xcells; ++j) {
      const SpacePoint u{xlo + (j + 0.5) * dx};
      // Distances on a table metric are not translation invariant.
      const SpaceTimePoint z = dom.to_absolute(u, -ec);
      if (!ring_membership(dom, ring, z)) continue;
      push(out, u, -ec, dx * out.time_step);
    }
  }
  return out;
}

SetSample section(const DomainSpec& dom, const SectionTarget& t, int r) {
  if (!(t.lambda > 0 && t.lambda < 1)) throw InputError("section lambda must be in (0, 1)");
  if (!(t.rho > 1)) throw InputError("section rho must exceed 1");
  if (!(t.eta > 0 && t.eta <= t.lambda)) throw InputError("section needs 0 < t0 - tau <= lambda");
  const MetricSpace& m = dom.metric();
  const int n = m.dim();
  SetSample out;
  out.anchor = dom.z0();
  out.resolution = r;
  out.spatial = true;
  const double cap4 = t.lambda * t.lambda - t.eta * t.eta;
  if (!(cap4 > 0)) return out;
  const double reach2 = t.eta * std::log(t.rho);
  const double radius = std::min(std::sqrt(reach2), std::pow(cap4, 0.25));
  const SpacePoint hw = m.ball_halfwidths(radius);
  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = -hw[i];
    hi[i] = hw[i];
  }
  const SpacePoint origin(n);
  for_each_cell(lo, hi, 1 << r, [&](const std::vector<double>& c, double vol) {
    SpacePoint u(n);
    for (int i = 0; i < n; ++i) u[i] = c[i];
    const double d = m.dist(origin, u);
    if (d * d > reach2 || d * d * d * d > cap4) return;
    if (!dom.excluded_local(u, -t.eta)) return;
    push(out, u, -t.eta, vol);
  });
  return out;
}

SetSample ball_complement(const DomainSpec& dom, const BallComplementTarget& t, int r) {
  if (!(t.lambda > 0 && t.lambda < 1)) throw InputError("lambda must be in (0, 1)");
  if (t.l < 1) throw InputError("ball level l must be positive");
  const MetricSpace& m = dom.metric();
  const int n = m.dim();
  const double radius = std::pow(t.lambda, 0.5 * t.l);
  const SpacePoint hw = m.ball_halfwidths(radius);
  std::vector<double> lo(n + 1), hi(n + 1);
  lo[0] = -radius * radius;
  hi[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    lo[i + 1] = -hw[i];
    hi[i + 1] = hw[i];
  }
  SetSample out;
  out.anchor = dom.z0();
  out.resolution = r;
  out.time_step = radius * radius / (1 << r);
  const SpaceTimePoint origin{SpacePoint(n), 0.0};
  for_each_cell(lo, hi, 1 << r, [&](const std::vector<double>& c, double vol) {
    SpacePoint u(n);
    for (int i = 0; i < n; ++i) u[i] = c[i + 1];
    if (m.parabolic_dist({u, c[0]}, origin) > radius) return;
    if (!dom.excluded_local(u, c[0])) return;
    push(out, u, c[0], vol);
  });
  return out;
}

SetSample sample_domain_once(const DomainSpec& dom, const DomainTarget& target, int r) {
  return std::visit(
      [&](const auto& t) -> SetSample {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RingSpec>) {
          validate_ring(t);
          return dom.metric().has_polar_coordinates() ? ring_polar(dom, t, r)
                                                      : ring_cartesian(dom, t, r);
        } else if constexpr (std::is_same_v<T, SectionTarget>) {
          return section(dom, t, r);
        } else {
          return ball_complement(dom, t, r);
        }
      },
      target);
}

SetSample compact_once(const MetricSpace& m, const SpaceTimePoint& anchor, const CompactSet& set,
                       int r) {
  const int n = m.dim();
  SetSample out;
  out.anchor = anchor;
  out.resolution = r;
  const int cells = 1 << r;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ParabolicBallSet>) {
          if (!(s.radius > 0)) throw InputError("ball radius must be positive");
          const SpacePoint hw = m.ball_halfwidths(s.radius);
          std::vector<double> lo(n + 1), hi(n + 1);
          lo[0] = -s.radius * s.radius;
          hi[0] = s.radius * s.radius;
          for (int i = 0; i < n; ++i) {
            lo[i + 1] = -hw[i];
            hi[i + 1] = hw[i];
          }
          out.time_step = (hi[0] - lo[0]) / cells;
          const SpaceTimePoint origin{SpacePoint(n), 0.0};
          for_each_cell(lo, hi, cells, [&](const std::vector<double>& c, double vol) {
            SpacePoint u(n);
            for (int i = 0; i < n; ++i) u[i] = c[i + 1];
            if (m.parabolic_dist({u, c[0]}, origin) > s.radius) return;
            push(out, u, c[0], vol);
          });
        } else if constexpr (std::is_same_v<T, FlatBoxSet>) {
          if (s.lo.dim != n || s.hi.dim != n) throw InputError("flat box dimension mismatch");
          std::vector<double> lo(n), hi(n);
          double step = 0;
          for (int i = 0; i < n; ++i) {
            if (!(s.hi[i] > s.lo[i])) throw InputError("flat box needs lo < hi");
            lo[i] = s.lo[i];
            hi[i] = s.hi[i];
            const double w = (hi[i] - lo[i]) / cells;
            step = i == 0 ? w : std::min(step, w);
          }
          out.time_step = step * step;
          out.spatial = true;
          for_each_cell(lo, hi, cells, [&](const std::vector<double>& c, double vol) {
            SpacePoint u(n);
            for (int i = 0; i < n; ++i) u[i] = c[i];
            push(out, u, 0.0, vol);
          });
        } else {
          if (s.lo.dim != n || s.hi.dim != n) throw InputError("box dimension mismatch");
          if (!(s.s_hi > s.s_lo)) throw InputError("box needs s_lo < s_hi");
          std::vector<double> lo(n + 1), hi(n + 1);
          lo[0] = s.s_lo;
          hi[0] = s.s_hi;
          for (int i = 0; i < n; ++i) {
            if (!(s.hi[i] > s.lo[i])) throw InputError("box needs lo < hi");
            lo[i + 1] = s.lo[i];
            hi[i + 1] = s.hi[i];
          }
          out.time_step = (hi[0] - lo[0]) / cells;
          for_each_cell(lo, hi, cells, [&](const std::vector<double>& c, double vol) {
            SpacePoint u(n);
            for (int i = 0; i < n; ++i) u[i] = c[i + 1];
            push(out, u, c[0], vol);
          });
        }
      },
      set);
  return out;
}

template <class Once>
SetSample with_discrepancy(int resolution, bool with_error, Once&& once) {
  check_resolution(resolution);
  SetSample s = once(resolution);
  if (with_error) {
    const int other = resolution > 1 ? resolution - 1 : resolution + 1;
    s.standard_error = std::abs(s.measure_estimate - once(other).measure_estimate);
  }
  return s;
}

}  // namespace

SetSample sample_set_and_measure(const DomainSpec& dom, const DomainTarget& target, int resolution,
                                 bool with_error) {
  return with_discrepancy(resolution, with_error,
                          [&](int r) { return sample_domain_once(dom, target, r); });
}

SetSample sample_compact(const MetricSpace& metric, const SpaceTimePoint& anchor,
                         const CompactSet& set, int resolution, bool with_error) {
  return with_discrepancy(resolution, with_error,
                          [&](int r) { return compact_once(metric, anchor, set, r); });
}

SetSample merge_samples(const std::vector<SetSample>& parts) {
  SetSample out;
  if (parts.empty()) return out;
  out.anchor = parts.front().anchor;
  out.resolution = parts.front().resolution;
  out.spatial = parts.front().spatial;
  out.time_step = 0;
  using Key = std::tuple<double, double, double, double>;
  std::map<Key, std::size_t> seen;
  for (const auto& p : parts) {
    if (!(p.anchor == out.anchor)) throw InputError("merged samples must share an anchor");
    if (p.time_step > 0) out.time_step = out.time_step > 0 ? std::min(out.time_step, p.time_step) : p.time_step;
    out.standard_error += p.standard_error;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& z = p.points[i];
      const Key key{z.t, z.x[0], z.x[1], z.x[2]};
      if (seen.count(key)) continue;
      seen.emplace(key, out.points.size());
      push(out, z.x, z.t, p.weights[i]);
    }
  }
  return out;
}

}  // namespace thermowiener
