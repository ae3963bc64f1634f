#pragma once

// Small seeded generators for property tests. Each test draws its own
// stream so failures replay from the printed seed.

#include <cstdint>
#include <random>
#include <vector>

#include "thermowiener/points.hpp"

namespace twtest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }

  thermowiener::SpacePoint point(int n, double half) {
    thermowiener::SpacePoint p(n);
    for (int i = 0; i < n; ++i) p[i] = uniform(-half, half);
    return p;
  }
  thermowiener::SpaceTimePoint space_time(int n, double half, double t_lo, double t_hi) {
    return {point(n, half), uniform(t_lo, t_hi)};
  }
  // Nonnegative m x n matrix with a few structural zeros and a positive
  // diagonal-like entry per column so the packing LP stays bounded.
  std::vector<double> packing_matrix(int m, int n) {
    std::vector<double> a(static_cast<std::size_t>(m) * n);
    for (auto& v : a) v = coin(0.2) ? 0.0 : uniform(0.0, 1.0);
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j % m) * n + j] += 0.5;
    return a;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace twtest
