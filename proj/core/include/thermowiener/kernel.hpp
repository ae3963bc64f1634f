#pragma once

#include <functional>
#include <string>

#include "thermowiener/metric.hpp"

namespace thermowiener {

struct GaussBounds {
  double Lambda = 1.0;
  double a0 = 0.25;
  double b0 = 0.25;
  double c_d = 2.0;
};

// Lambda + 1/a0 + b0 + c_d.
double structural_constant(const GaussBounds& b);

// Values below this are flushed to zero.
inline constexpr double kUnderflow = 1e-300;

// exp(-a d^2 / (t - tau)) / |B(x, sqrt(t - tau))| for t > tau, else 0.
class GaussianKernel {
 public:
  GaussianKernel(MetricSpace metric, double a);

  double operator()(const SpaceTimePoint& z, const SpaceTimePoint& w) const;
  double exponent() const { return a_; }
  const MetricSpace& metric() const { return metric_; }

 private:
  MetricSpace metric_;
  double a_;
  bool analytic_;
  double log_unit_volume_;
  double half_q_;
};

// Fundamental solution of (1/beta) Laplacian - d/dt on R^N.
class HeatKernel {
 public:
  HeatKernel(int n, double beta);

  double operator()(const SpaceTimePoint& z, const SpaceTimePoint& w) const;
  int dim() const { return n_; }
  double beta() const { return beta_; }
  // HeatKernel / GaussianKernel(euclidean(N), beta/4) for t > tau.
  double gaussian_ratio() const;

 private:
  int n_;
  double beta_;
  double log_norm_;
};

// Type-erased kernel handed to the capacity solver. translation_invariant
// tells whether points may be given relative to a common anchor.
struct Kernel {
  std::function<double(const SpaceTimePoint&, const SpaceTimePoint&)> eval;
  std::string name;
  bool translation_invariant = true;

  double operator()(const SpaceTimePoint& z, const SpaceTimePoint& w) const { return eval(z, w); }

  static Kernel gaussian(const MetricSpace& metric, double a);
  static Kernel heat(int n, double beta);
  static Kernel constant(double value);
};

}  // namespace thermowiener
