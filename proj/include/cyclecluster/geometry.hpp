#pragma once

#include <array>
#include <string>
#include <vector>

#include "cyclecluster/rational.hpp"

namespace cyclecluster {

struct Vec2 {
  Rational x1;
  Rational x2;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Vec2 operator*(const Rational& c, const Vec2& v) { return {c * v.x1, c * v.x2}; }
};

/// Row-major 2x2 matrix.
struct Mat2 {
  std::array<std::array<Rational, 2>, 2> m{};

  static Mat2 identity() { return Mat2{{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}}}; }

  const Rational& operator()(int i, int j) const { return m[i][j]; }
  Rational& operator()(int i, int j) { return m[i][j]; }

  Rational trace() const { return m[0][0] + m[1][1]; }
  Rational det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 c;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return c;
  }
  friend Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.m[0][0] * v.x1 + a.m[0][1] * v.x2, a.m[1][0] * v.x1 + a.m[1][1] * v.x2};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 c;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][j] - b.m[i][j];
    return c;
  }
};

Mat2 power(const Mat2& a, unsigned n);

/// Affine map p -> linear * p + offset.
struct Affine2 {
  Mat2 linear = Mat2::identity();
  Vec2 offset{Rational(0), Rational(0)};

  Vec2 operator()(const Vec2& p) const { return linear * p + offset; }
  /// (this o inner)(p) = this(inner(p)).
  Affine2 after(const Affine2& inner) const { return {linear * inner.linear, linear * inner.offset + offset}; }
};

/// a*x1 + b*x2 + c >= 0, or > 0 when strict.
struct LinearConstraint {
  Rational a;
  Rational b;
  Rational c;
  bool strict = false;

  Rational value(const Vec2& p) const { return a * p.x1 + b * p.x2 + c; }
  bool holds(const Vec2& p) const { return strict ? value(p) > 0 : value(p) >= 0; }
  bool holds_closed(const Vec2& p) const { return value(p) >= 0; }
  bool holds_strictly(const Vec2& p) const { return value(p) > 0; }
  /// The same constraint expressed on the pre-image variable q when p = map(q).
  LinearConstraint pulled_back(const Affine2& map) const;

  std::string describe() const;
};

/// Vertices of the closed convex set cut out by the constraints (taken as
/// non-strict), in counter-clockwise order. Empty if the set is empty; the set
/// is assumed bounded.
std::vector<Vec2> polygon_vertices(const std::vector<LinearConstraint>& constraints);

/// Twice the signed area (shoelace); positive for counter-clockwise order.
Rational twice_area(const std::vector<Vec2>& polygon);

}  // namespace cyclecluster
