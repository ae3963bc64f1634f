#include "thermowiener/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"

namespace thermowiener {

namespace {
const double kLogUnderflow = std::log(kUnderflow);

double flush(double log_value) {
  if (log_value < kLogUnderflow) return 0.0;
  const double v = std::exp(log_value);
  return v < kUnderflow ? 0.0 : v;
}

// Forward time gap, with gaps at rounding level treated as simultaneous.
// Grid points built as a + i*h and b + j*h can land an ulp apart.
double forward_gap(double t, double tau) {
  const double dt = t - tau;
  return dt > 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(tau)) ? dt : 0.0;
}
}  // namespace

double structural_constant(const GaussBounds& b) {
  if (!(b.Lambda > 0) || !(b.a0 > 0) || !(b.b0 > 0) || !(b.c_d > 0))
    throw InputError("bounds Lambda, a0, b0, c_d must be positive");
  return b.Lambda + 1.0 / b.a0 + b.b0 + b.c_d;
}

GaussianKernel::GaussianKernel(MetricSpace metric, double a)
    : metric_(std::move(metric)), a_(a) {
  if (!(a > 0) || !std::isfinite(a)) throw InputError("gaussian exponent must be positive");
  analytic_ = metric_.volume_mode() == VolumeMode::kAnalytic;
  log_unit_volume_ = analytic_ ? std::log(metric_.unit_ball_volume()) : 0.0;
  half_q_ = metric_.homogeneous_dimension() / 2;
}

double GaussianKernel::operator()(const SpaceTimePoint& z, const SpaceTimePoint& w) const {
  const double dt = forward_gap(z.t, w.t);
  if (!(dt > 0)) return 0.0;
  const double d = metric_.dist(z.x, w.x);
  const double expo = -a_ * d * d / dt;
  if (analytic_) return flush(expo - log_unit_volume_ - half_q_ * std::log(dt));
  const double vol = metric_.ball_volume(z.x, std::sqrt(dt));
  if (!(vol > 0)) return 0.0;
  return flush(expo - std::log(vol));
}

HeatKernel::HeatKernel(int n, double beta) : n_(n), beta_(beta) {
  if (n < 1 || n > kMaxSpaceDim) throw InputError("heat kernel dimension must be in [1, 3]");
  if (!(beta > 0) || !std::isfinite(beta)) throw InputError("beta must be positive");
  log_norm_ = -0.5 * n * std::log(4 * std::numbers::pi / beta);
}

double HeatKernel::operator()(const SpaceTimePoint& z, const SpaceTimePoint& w) const {
  const double dt = forward_gap(z.t, w.t);
  if (!(dt > 0)) return 0.0;
  double d2 = 0;
  for (int i = 0; i < n_; ++i) d2 += (z.x[i] - w.x[i]) * (z.x[i] - w.x[i]);
  return flush(log_norm_ - 0.5 * n_ * std::log(dt) - beta_ * d2 / (4 * dt));
}

double HeatKernel::gaussian_ratio() const {
  const double omega = MetricSpace::euclidean(n_).unit_ball_volume();
  return omega / std::pow(4 * std::numbers::pi / beta_, 0.5 * n_);
}

Kernel Kernel::gaussian(const MetricSpace& metric, double a) {
  GaussianKernel g(metric, a);
  return Kernel{[g](const SpaceTimePoint& z, const SpaceTimePoint& w) { return g(z, w); },
                "gaussian(a=" + format_real(a) + ")", metric.translation_invariant()};
}

Kernel Kernel::heat(int n, double beta) {
  HeatKernel h(n, beta);
  return Kernel{[h](const SpaceTimePoint& z, const SpaceTimePoint& w) { return h(z, w); },
                "heat(beta=" + format_real(beta) + ")", true};
}

Kernel Kernel::constant(double value) {
  return Kernel{[value](const SpaceTimePoint&, const SpaceTimePoint&) { return value; },
                "constant", true};
}

}  // namespace thermowiener
