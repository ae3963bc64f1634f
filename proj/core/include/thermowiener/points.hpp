#pragma once

#include <array>
#include <initializer_list>

namespace thermowiener {

inline constexpr int kMaxSpaceDim = 3;

// Fixed-capacity coordinate vector; dim is the active length.
struct SpacePoint {
  std::array<double, kMaxSpaceDim> c{};
  int dim = 0;

  SpacePoint() = default;
  explicit SpacePoint(int n);
  SpacePoint(std::initializer_list<double> coords);

  int size() const { return dim; }
  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
  bool operator==(const SpacePoint& o) const;
};

struct SpaceTimePoint {
  SpacePoint x;
  double t = 0.0;

  bool operator==(const SpaceTimePoint& o) const { return x == o.x && t == o.t; }
};

}  // namespace thermowiener
