#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermowiener/capacity.hpp"

namespace thermowiener {

enum class SeriesVariant {
  kSufficient,  // C_a on Omega_k^h, weight lambda^(b h)
  kNecessary,   // C_b on Omega_k^h, weight lambda^(a h)
  kDee,         // C_a on D_k^h, weight lambda^(b h)
};

std::string variant_name(SeriesVariant v);
SeriesVariant parse_variant(const std::string& s);

struct SeriesTerm {
  int k = 0;
  int h = 0;
  double capacity = 0.0;
  double capacity_gap = 0.0;
  std::size_t n_atoms = 0;
  double ball_volume = 0.0;
  double weight = 0.0;
  double term = 0.0;
  bool failed = false;
};

struct SeriesTable {
  double lambda = 0.25;
  double a = 0.25;
  double b = 0.5;
  SeriesVariant variant = SeriesVariant::kSufficient;
  int K_max = 0;
  int H_max = 0;
  int resolution = 0;
  // terms[k-1][h-1]
  std::vector<std::vector<SeriesTerm>> terms;
  bool partial = false;
  // Smallest C with term <= C h^(Q/2) weight(h) over all computed cells.
  double term_bound_C = 0.0;
  // sum over k of C sum_{h > H_max} h^(Q/2) weight(h).
  double h_tail_bound = 0.0;

  std::vector<double> row_sums() const;
  std::vector<double> partial_sums() const;
};

struct SeriesOptions {
  int K_max = 40;
  int H_max = 40;
  int resolution = 3;
  double tolerance = 1e-6;
};

SeriesTable series_table(const DomainSpec& dom, double lambda, double a, double b, SeriesVariant variant,
                         const SeriesOptions& opt);

enum class Verdict { kDivergent, kConvergent, kInconclusive };
std::string verdict_name(Verdict v);

struct VerdictThresholds {
  double increment_fraction = 0.1;  // median tail increment vs max increment
  double doubling_ratio = 1.5;      // S(K) / S(K/2)
  double geometric_ratio = 0.9;
  double geometric_r2 = 0.95;
  double tail_fraction = 0.05;
};

struct SeriesReport {
  std::vector<double> partial_sums;
  Verdict verdict = Verdict::kInconclusive;
  int K_max = 0;
  int H_max = 0;
  double median_tail_increment = 0.0;
  double max_increment = 0.0;
  double doubling_ratio = 0.0;  // S(K_max) / S(K_max/2), 0 if undefined
  double growth_slope = 0.0;    // least squares slope of S(K) vs K over the tail
  double geometric_ratio = 0.0;
  double geometric_r2 = 0.0;
  double geometric_tail_bound = 0.0;
  bool zero_tail = false;
  bool partial = false;
  std::string reason;
};

SeriesReport divergence_verdict(const SeriesTable& t, const VerdictThresholds& th = {});
// Same rules on raw partial sums.
SeriesReport divergence_verdict(const std::vector<double>& partial_sums, int H_max = 0,
                                const VerdictThresholds& th = {});

struct ComparabilityReport {
  double lambda = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> s_values;
  std::vector<double> z_lambda;
  std::vector<double> z_mu;
  std::vector<double> c_per_s;  // z_lambda / (z_mu + 1)
  double C = 0.0;               // max over s
  double c_spread = 0.0;        // max / min over s with positive values
};

// z_a^b(lambda; s) = sum_{k <= s} sum_h dee-variant terms.
ComparabilityReport lambda_comparability(const DomainSpec& dom, double a, double b, double lambda, double mu,
                                         const std::vector<double>& s_values, const SeriesOptions& opt);

struct SandwichRow {
  int k = 0;
  double omega_sum = 0.0;  // sum_h lambda^(bh) C_a(Omega_k^h)
  double dee_sum = 0.0;    // sum_h lambda^(bh) C_a(D_k^h)
  double upper = 0.0;      // omega_sum / (1 - lambda^b)
  bool holds = false;
};

// All capacities of row k share one constraint grid and D_k^h is sampled
// as the union of the Omega_k^j samples, so inclusions are exact.
SandwichRow ring_sandwich(const DomainSpec& dom, double lambda, double a, double b, int k, int H,
                          int resolution, double tolerance = 1e-6);

struct QuadratureSpec {
  int inner_nodes = 24;       // Gauss-Legendre nodes in w = sqrt(log rho)
  double u_max = 40.0;        // inner cut-off in log rho
  int outer_nodes = 4;        // Gauss-Legendre nodes per outer panel
  double panel_width = 1.0;   // outer panel width in log eta
  int resolution = 8;         // section sampling resolution
};

struct IntegralProbe {
  SpaceTimePoint offset;
  double dhat = 0.0;
  double M = 0.0;
};

struct IntegralReport {
  double lambda = 0.0;
  double b = 0.0;
  QuadratureSpec quadrature;
  std::vector<IntegralProbe> probes;
  double inner_truncation_bound = 0.0;  // bound on the inner integrand tail
  double outer_truncation_bound = 0.0;  // inner bound times the largest log range
  int section_evaluations = 0;
  double slope = 0.0;  // dM / d log(1/dhat^2) over the closest probes
  bool divergent = false;
  bool flagged = false;
  std::string note;
};

// Probes are offsets from z0.
IntegralReport integral_test(const DomainSpec& dom, double lambda, double b,
                             const std::vector<SpaceTimePoint>& probes, const QuadratureSpec& q);
// Inner integral at one eta; exposed for cross-checks.
double inner_integral(const DomainSpec& dom, double lambda, double b, double eta, const QuadratureSpec& q);

struct WienerFunctionEstimate {
  double rho = 0.0;
  int L_max = 0;
  double lambda = 0.0;
  std::vector<SpaceTimePoint> probes;
  std::vector<std::vector<double>> one_minus_v;  // [l-1][probe]
  std::vector<double> W;
  double truncation_bound = 0.0;
  std::string kernel;
};

// Kernel used for the equilibrium-potential surrogate V_l: the heat kernel
// for euclidean metrics, G_{b0} / Lambda otherwise.
Kernel surrogate_kernel(const MetricSpace& metric, double beta, double b0, double Lambda);

WienerFunctionEstimate wiener_function(const DomainSpec& dom, const Kernel& kernel, double lambda, double rho,
                                       int L_max, const std::vector<SpaceTimePoint>& probes, int resolution,
                                       double tolerance = 1e-6);

struct BoundCheckReport {
  std::vector<double> s_values;  // log dhat^2 / log lambda
  std::vector<double> Z;
  std::vector<double> W;
  std::vector<double> c_per_probe;
  double C = 0.0;
  double spearman = 0.0;  // between Z and log W
  bool holds = false;
  int K_used = 0;
};

struct BoundOptions {
  SeriesOptions series;
  int L_max = 20;
  int resolution = 4;
};

BoundCheckReport bound_check(const DomainSpec& dom, const Kernel& v_kernel, double lambda, double a, double b,
                             double rho, const std::vector<SpaceTimePoint>& probes, const BoundOptions& opt);
// Pairing step on precomputed values, exposed for synthetic checks.
BoundCheckReport bound_from_pairs(const std::vector<double>& Z, const std::vector<double>& W);

}  // namespace thermowiener
