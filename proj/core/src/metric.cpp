#include "thermowiener/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "thermowiener/errors.hpp"

namespace thermowiener {

SpacePoint::SpacePoint(int n) : dim(n) {
  if (n < 1 || n > kMaxSpaceDim) throw InputError("space dimension must be in [1, 3]");
}

SpacePoint::SpacePoint(std::initializer_list<double> coords) {
  if (coords.size() < 1 || coords.size() > kMaxSpaceDim)
    throw InputError("space dimension must be in [1, 3]");
  dim = static_cast<int>(coords.size());
  std::copy(coords.begin(), coords.end(), c.begin());
}

bool SpacePoint::operator==(const SpacePoint& o) const {
  if (dim != o.dim) return false;
  for (int i = 0; i < dim; ++i)
    if (c[i] != o.c[i]) return false;
  return true;
}

double koranyi_unit_ball_volume() {
  // Slice at height x3 is a disk of area pi * sqrt(1 - 16 x3^2); with
  // x3 = sin(theta)/4 the integrand becomes (pi/4) cos^2(theta).
  static const double value = [] {
    const int panels = 4096;
    const double lo = -std::numbers::pi / 2, hi = std::numbers::pi / 2;
    const double h = (hi - lo) / panels;
    auto f = [](double th) { return std::numbers::pi / 4 * std::cos(th) * std::cos(th); };
    double s = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3;
  }();
  return value;
}

MetricSpace MetricSpace::euclidean(int n) {
  if (n < 1 || n > kMaxSpaceDim) throw InputError("euclidean dimension must be in [1, 3]");
  MetricSpace m;
  m.kind_ = MetricKind::kEuclidean;
  m.dim_ = n;
  m.q_ = n;
  m.c_d_ = std::pow(2.0, n);
  m.unit_volume_ = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  return m;
}

MetricSpace MetricSpace::heisenberg() {
  MetricSpace m;
  m.kind_ = MetricKind::kHeisenberg;
  m.dim_ = 3;
  m.q_ = 4;
  m.c_d_ = 16;
  m.unit_volume_ = koranyi_unit_ball_volume();
  return m;
}

MetricSpace MetricSpace::table(std::vector<double> nodes, std::vector<double> distances,
                               double doubling_constant, std::size_t mc_samples,
                               std::uint64_t seed) {
  const std::size_t n = nodes.size();
  if (n < 2) throw InputError("table metric needs at least two nodes");
  if (distances.size() != n * n) throw InputError("table metric distance matrix has wrong size");
  for (std::size_t i = 1; i < n; ++i)
    if (!(nodes[i] > nodes[i - 1])) throw InputError("table metric nodes must increase");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances[i * n + j];
      if (!std::isfinite(d) || d < 0) throw InputError("table metric distances must be finite and >= 0");
      if (d != distances[j * n + i]) throw InputError("table metric distances must be symmetric");
    }
  if (!(doubling_constant > 1)) throw InputError("doubling constant must exceed 1");
  if (mc_samples == 0) throw InputError("table metric needs monte carlo samples");
  MetricSpace m;
  m.kind_ = MetricKind::kTable;
  m.mode_ = VolumeMode::kMonteCarlo;
  m.dim_ = 1;
  m.c_d_ = doubling_constant;
  m.q_ = std::log2(doubling_constant);
  m.unit_volume_ = 0;
  m.mc_samples_ = mc_samples;
  m.mc_seed_ = seed;
  m.table_ = std::make_shared<const Table>(Table{std::move(nodes), std::move(distances)});
  return m;
}

MetricSpace MetricSpace::with_monte_carlo(std::size_t samples, std::uint64_t seed) const {
  if (samples == 0) throw InputError("monte carlo volume needs at least one sample");
  MetricSpace m = *this;
  m.mode_ = VolumeMode::kMonteCarlo;
  m.mc_samples_ = samples;
  m.mc_seed_ = seed;
  return m;
}

std::string MetricSpace::name() const {
  switch (kind_) {
    case MetricKind::kEuclidean: return "euclidean(" + std::to_string(dim_) + ")";
    case MetricKind::kHeisenberg: return "heisenberg-koranyi";
    case MetricKind::kTable: return "table";
  }
  return "unknown";
}

void MetricSpace::check_dim(const SpacePoint& x) const {
  if (x.dim != dim_) throw InputError("point dimension does not match metric dimension");
}

double MetricSpace::dist(const SpacePoint& x, const SpacePoint& y) const {
  check_dim(x);
  check_dim(y);
  switch (kind_) {
    case MetricKind::kEuclidean: {
      double s = 0;
      for (int i = 0; i < dim_; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
      return std::sqrt(s);
    }
    case MetricKind::kHeisenberg: {
      const SpacePoint g = relative(y, x);
      const double r2 = g[0] * g[0] + g[1] * g[1];
      return std::pow(r2 * r2 + 16.0 * g[2] * g[2], 0.25);
    }
    case MetricKind::kTable: {
      if (x == y) return 0.0;
      const auto& nd = table_->nodes;
      const std::size_t n = nd.size();
      auto locate = [&](double v) {
        if (v < nd.front() || v > nd.back()) throw InputError("point outside table metric grid");
        std::size_t i = std::upper_bound(nd.begin(), nd.end(), v) - nd.begin();
        i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
        return std::pair{i, (v - nd[i]) / (nd[i + 1] - nd[i])};
      };
      const auto [i, wx] = locate(x[0]);
      const auto [j, wy] = locate(y[0]);
      const auto& D = table_->distances;
      auto at = [&](std::size_t a, std::size_t b) { return D[a * n + b]; };
      return (1 - wx) * (1 - wy) * at(i, j) + wx * (1 - wy) * at(i + 1, j) +
             (1 - wx) * wy * at(i, j + 1) + wx * wy * at(i + 1, j + 1);
    }
  }
  return 0.0;
}

double MetricSpace::parabolic_dist(const SpaceTimePoint& z, const SpaceTimePoint& w) const {
  const double d = dist(z.x, w.x);
  const double dt = z.t - w.t;
  return std::pow(d * d * d * d + dt * dt, 0.25);
}

SpacePoint MetricSpace::translate(const SpacePoint& base, const SpacePoint& offset) const {
  check_dim(base);
  check_dim(offset);
  SpacePoint r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = base[i] + offset[i];
  if (kind_ == MetricKind::kHeisenberg)
    r[2] += 0.5 * (base[1] * offset[0] - base[0] * offset[1]);
  return r;
}

SpacePoint MetricSpace::relative(const SpacePoint& base, const SpacePoint& x) const {
  check_dim(base);
  check_dim(x);
  SpacePoint r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = x[i] - base[i];
  if (kind_ == MetricKind::kHeisenberg)
    r[2] += 0.5 * (base[0] * x[1] - base[1] * x[0]);
  return r;
}

SpacePoint MetricSpace::dilate(const SpacePoint& u, double r) const {
  check_dim(u);
  SpacePoint v = u;
  for (int i = 0; i < dim_; ++i) v[i] *= r;
  if (kind_ == MetricKind::kHeisenberg) v[2] *= r;
  return v;
}

SpacePoint MetricSpace::ball_halfwidths(double r) const {
  SpacePoint h(dim_);
  for (int i = 0; i < dim_; ++i) h[i] = r;
  if (kind_ == MetricKind::kHeisenberg) h[2] = r * r / 4;
  return h;
}

double MetricSpace::unit_ball_volume() const {
  if (kind_ == MetricKind::kTable) throw InputError("table metrics have no analytic unit ball");
  return unit_volume_;
}

double MetricSpace::ball_volume(const SpacePoint& x, double r) const {
  return ball_volume_estimate(x, r).value;
}

VolumeEstimate MetricSpace::ball_volume_estimate(const SpacePoint& x, double r) const {
  check_dim(x);
  if (!(r > 0) || !std::isfinite(r)) throw InputError("ball radius must be positive and finite");
  if (mode_ == VolumeMode::kAnalytic) return {unit_volume_ * std::pow(r, q_), 0.0};
  return monte_carlo_volume(x, r);
}

VolumeEstimate MetricSpace::monte_carlo_volume(const SpacePoint& x, double r) const {
  std::mt19937_64 rng(mc_seed_);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SpacePoint lo(dim_), width(dim_);
  if (kind_ == MetricKind::kTable) {
    lo[0] = table_lo();
    width[0] = table_hi() - table_lo();
  } else {
    // Translation invariant: sample around the origin.
    const SpacePoint h = ball_halfwidths(r);
    for (int i = 0; i < dim_; ++i) {
      lo[i] = -h[i];
      width[i] = 2 * h[i];
    }
  }
  const SpacePoint centre = kind_ == MetricKind::kTable ? x : SpacePoint(dim_);
  double box = 1;
  for (int i = 0; i < dim_; ++i) box *= width[i];
  std::size_t hits = 0;
  SpacePoint y(dim_);
  for (std::size_t s = 0; s < mc_samples_; ++s) {
    for (int i = 0; i < dim_; ++i) y[i] = lo[i] + width[i] * unif(rng);
    if (dist(centre, y) < r) ++hits;
  }
  const double n = static_cast<double>(mc_samples_);
  const double p = hits / n;
  return {box * p, box * std::sqrt(p * (1 - p) / n)};
}

std::vector<DirectionCell> MetricSpace::direction_grid(int n) const {
  if (!has_polar_coordinates()) throw InputError("table metrics have no polar coordinates");
  if (n < 1) throw InputError("direction grid needs n >= 1");
  const double pi = std::numbers::pi;
  std::vector<DirectionCell> cells;
  if (kind_ == MetricKind::kHeisenberg) {
    const double dphi = pi / n, dpsi = 2 * pi / n;
    for (int i = 0; i < n; ++i) {
      const double phi = -pi / 2 + (i + 0.5) * dphi;
      for (int j = 0; j < n; ++j) {
        const double psi = (j + 0.5) * dpsi;
        const double rc = std::sqrt(std::cos(phi));
        cells.push_back({SpacePoint{rc * std::cos(psi), rc * std::sin(psi), std::sin(phi) / 4},
                         dphi * dpsi / 4});
      }
    }
    return cells;
  }
  switch (dim_) {
    case 1:
      cells.push_back({SpacePoint{-1.0}, 1.0});
      cells.push_back({SpacePoint{1.0}, 1.0});
      break;
    case 2:
      for (int j = 0; j < n; ++j) {
        const double psi = (j + 0.5) * 2 * pi / n;
        cells.push_back({SpacePoint{std::cos(psi), std::sin(psi)}, 2 * pi / n});
      }
      break;
    default:
      for (int i = 0; i < n; ++i) {
        const double ct = -1 + (i + 0.5) * 2.0 / n;
        const double st = std::sqrt(1 - ct * ct);
        for (int j = 0; j < n; ++j) {
          const double psi = (j + 0.5) * 2 * pi / n;
          cells.push_back({SpacePoint{st * std::cos(psi), st * std::sin(psi), ct},
                           (2.0 / n) * (2 * pi / n)});
        }
      }
  }
  return cells;
}

double MetricSpace::table_lo() const {
  if (!table_) throw InputError("not a table metric");
  return table_->nodes.front();
}

double MetricSpace::table_hi() const {
  if (!table_) throw InputError("not a table metric");
  return table_->nodes.back();
}

}  // namespace thermowiener
