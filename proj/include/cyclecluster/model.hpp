#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cyclecluster/rational.hpp"

namespace cyclecluster {

/// Model parameters: the signaling region is S = [0, s) and the responsive
/// region is R = [r, 1), both taken mod 1. Requires 0 < s <= r < 1.
class Parameters {
 public:
  /// Throws Error(InvalidParameters) unless 0 < s <= r < 1.
  Parameters(Rational r, Rational s);

  const Rational& r() const noexcept { return r_; }
  const Rational& s() const noexcept { return s_; }

  /// 2s < r < 1 - 5s/3: the range on which the 13-piece k=3 map holds.
  bool in_studied_wedge() const;

  /// 2s < r <= 1/2 - s/3: the range on which the region transition
  /// inclusions are established.
  bool subcase_a() const;

  friend bool operator==(const Parameters&, const Parameters&) = default;

 private:
  Rational r_;
  Rational s_;
};

/// Throws Error(WedgeViolation) when the parameters are outside 2s < r < 1 - 5s/3.
void require_wedge(const Parameters& params);

/// A point 0 <= x_1 <= ... <= x_{k-1} <= 1 of the (k-1)-simplex; x_0 = 0 is
/// implicit. The endpoints 0 and 1 are distinct points.
class SimplexPoint {
 public:
  SimplexPoint() = default;

  std::size_t k() const noexcept { return coords_.size() + 1; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  /// 1-based, matching x_1 ... x_{k-1}.
  const Rational& x(std::size_t i) const { return coords_.at(i - 1); }

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  friend SimplexPoint validate_simplex(std::vector<Rational> coords, std::size_t k);
  explicit SimplexPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  std::vector<Rational> coords_;
};

/// Checks 0 <= x_1 <= ... <= x_{k-1} <= 1 exactly. Throws
/// Error(OrderingViolation) naming the offending 1-based index pair, or
/// Error(OutOfRange) for a coordinate below 0 or above 1.
SimplexPoint validate_simplex(std::vector<Rational> coords, std::size_t k);

inline SimplexPoint make_point(const Rational& x1, const Rational& x2) { return validate_simplex({x1, x2}, 3); }

/// Fraction of clusters whose phase lies in S.
struct SignalFraction {
  Rational value;
  friend bool operator==(const SignalFraction&, const SignalFraction&) = default;
};

bool in_signaling(const Rational& phase, const Parameters& params);
bool in_responsive(const Rational& phase, const Parameters& params);

/// #{j : phase_j mod 1 in [0, s)} / k.
SignalFraction signal_fraction(std::span<const Rational> phases, const Parameters& params);

/// 1 + sigma inside R, 1 everywhere else (S and the gap [s, r)).
Rational velocity(const Rational& phase, const SignalFraction& sigma, const Parameters& params);

}  // namespace cyclecluster
