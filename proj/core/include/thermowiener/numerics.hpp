#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thermowiener {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int n = 0;
};

// Ordinary least squares y = intercept + slope * x. r2 is 1 when y is
// constant along a perfect fit.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Spearman rank correlation with average ranks for ties. Returns 0 when
// either side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

std::uint64_t splitmix64(std::uint64_t x);
// Seed for stream `index` derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Shortest decimal text that round-trips to the same double.
std::string format_real(double v);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string_view& bytes);

}  // namespace thermowiener
