#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyclecluster/flow.hpp"
#include "cyclecluster/k3_map.hpp"
#include "cyclecluster/orbits.hpp"
#include "cyclecluster/sampling.hpp"

namespace cyclecluster::testing {

inline Rational Q(long p, long q = 1) {
  Rational x(p, q);
  x.canonicalize();
  return x;
}

inline Vec2 V(const Rational& a, const Rational& b) { return {a, b}; }

/// Uniform on a 2^20 grid strictly inside (lo, hi).
inline Rational strictly_between(Sampler& rng, const Rational& lo, const Rational& hi) {
  const std::uint64_t n = std::uint64_t(1) << 20;
  Rational t(static_cast<unsigned long>(1 + rng.below(n - 1)), static_cast<unsigned long>(n));
  t.canonicalize();
  return lo + (hi - lo) * t;
}

inline Vec2 iterate(const K3Map& map, Vec2 p, int n) {
  for (int i = 0; i < n; ++i) p = map.apply(p);
  return p;
}

/// Largest pairwise distance on the circle R/Z among the phases 0, x1, x2.
inline double circular_spread(const Vec2& p) {
  std::vector<double> x = {0.0, to_double(p.x1), to_double(p.x2)};
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      double d = std::fabs(x[i] - x[j]);
      d -= std::floor(d);
      worst = std::max(worst, std::min(d, 1 - d));
    }
  return worst;
}

/// Euclidean distance to the boundary of the triangle 0 <= x1 <= x2 <= 1.
inline double boundary_distance(const Vec2& p) {
  double a = to_double(p.x1), b = to_double(p.x2);
  return std::min({a, (b - a) / std::sqrt(2.0), 1 - b});
}

inline const OrbitRecord* find_orbit(const Catalog& cat, const std::string& name) {
  for (const auto& rec : cat.orbits)
    if (rec.name == name) return &rec;
  return nullptr;
}

/// True when both cycles visit the same points (in any rotation).
inline bool same_point_set(std::vector<Vec2> a, std::vector<Vec2> b) {
  auto less = [](const Vec2& u, const Vec2& v) { return u.x1 < v.x1 || (u.x1 == v.x1 && u.x2 < v.x2); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

}  // namespace cyclecluster::testing
