#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cyclecluster/geometry.hpp"

namespace cyclecluster {

/// Derives independent stream seeds from one master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic source of exact rational samples. Only the raw 64-bit
/// output of mt19937_64 is used, so the streams do not depend on the
/// standard library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// i / 2^bits with i uniform in [0, 2^bits].
  Rational unit(unsigned bits = 20);
  /// Uniform in [lo, hi] on a 2^bits grid.
  Rational between(const Rational& lo, const Rational& hi, unsigned bits = 20);

  /// Point of the closed triangle 0 <= x1 <= x2 <= 1 (boundary included).
  Vec2 triangle_point(unsigned bits = 20);
  /// Point strictly inside a convex polygon given counter-clockwise.
  Vec2 polygon_interior_point(const std::vector<Vec2>& polygon, unsigned bits = 20);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cyclecluster
