#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermowiener/wiener.hpp"

namespace thermowiener {

struct ConeOptions {
  double M0 = 1.0;
  double r0 = 0.25;
  int r_levels = 6;
  int resolution = 8;  // 2^resolution cells per axis of the slice box
  double theta_min = 0.01;
};

struct ConeReport {
  double M0 = 0.0;
  double r0 = 0.0;
  double theta_min = 0.0;
  int resolution = 0;
  std::vector<double> radii;      // tested r
  std::vector<double> theta_hat;  // excluded fraction of B(x0, M0 r) in the slice t0 - r^2
  std::vector<double> skipped;    // r whose slice left the strip
  double theta = 0.0;             // min over tested r
  bool satisfied = false;
};

// Grid count of {x in closed B(x0, M0 r) : (x, t0 - r^2) not in Omega} over
// r = r0 2^-j, j < r_levels, divided by the ball volume.
ConeReport cone_check(const DomainSpec& dom, const ConeOptions& opt);

enum class RegularityVerdict { kRegular, kIrregular, kInconclusive };
enum class RegularityBasis { kCone, kSufficientSeries, kNecessarySeriesConverges, kNone };
std::string verdict_name(RegularityVerdict v);
std::string basis_name(RegularityBasis b);

struct ClassifyOptions {
  double lambda = 0.25;
  double a = 0.25;   // capacity exponent of the sufficient series, a <= a0
  double b = 0.5;    // weight exponent of the sufficient series, b > b0
  double a0 = 0.25;  // declared Gaussian bounds of the operator
  double b0 = 0.25;
  SeriesOptions series;
  VerdictThresholds thresholds;
  ConeOptions cone;
  bool use_cone = true;
};

struct Classification {
  RegularityVerdict verdict = RegularityVerdict::kInconclusive;
  RegularityBasis basis = RegularityBasis::kNone;
  ClassifyOptions options;
  std::optional<ConeReport> cone;
  std::optional<SeriesTable> sufficient_table;
  std::optional<SeriesReport> sufficient;
  std::optional<SeriesTable> necessary_table;
  std::optional<SeriesReport> necessary;
  std::vector<std::string> notes;
};

// Cone shortcut, then the sufficient series (C_a, weight lambda^(b h)),
// then the necessary series (C_b0, weight lambda^(a h)); first decisive
// step wins. PARTIAL tables never decide.
Classification classify(const DomainSpec& dom, const ClassifyOptions& opt);

// Gaussian bounds of (1/beta) Laplacian - d/dt: a0 = b0 = beta / 4.
ClassifyOptions heat_operator_options(double beta);

}  // namespace thermowiener
