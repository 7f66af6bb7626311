#include "cyclecluster/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cyclecluster {

Mat2 power(const Mat2& a, unsigned n) {
  Mat2 out = Mat2::identity();
  for (unsigned i = 0; i < n; ++i) out = a * out;
  return out;
}

LinearConstraint LinearConstraint::pulled_back(const Affine2& map) const {
  // a.(L q + o) + c = (a L) q + (a.o + c)
  const Mat2& L = map.linear;
  return {a * L(0, 0) + b * L(1, 0), a * L(0, 1) + b * L(1, 1), a * map.offset.x1 + b * map.offset.x2 + c, strict};
}

std::string LinearConstraint::describe() const {
  return "(" + to_string(a) + ")*x1 + (" + to_string(b) + ")*x2 + (" + to_string(c) + (strict ? ") > 0" : ") >= 0");
}

namespace {

// Scale so the first nonzero of (a, b) has modulus 1; equal constraints then compare equal.
LinearConstraint normalized(const LinearConstraint& c) {
  Rational k = c.a != 0 ? abs(c.a) : abs(c.b);
  if (k == 0) return {0, 0, c.c, false};
  return {c.a / k, c.b / k, c.c / k, false};
}

}  // namespace

std::vector<Vec2> polygon_vertices(const std::vector<LinearConstraint>& input) {
  std::vector<LinearConstraint> constraints;
  for (const auto& c : input) {
    LinearConstraint n = normalized(c);
    bool seen = std::any_of(constraints.begin(), constraints.end(),
                            [&](const LinearConstraint& m) { return m.a == n.a && m.b == n.b && m.c == n.c; });
    if (!seen) constraints.push_back(std::move(n));
  }
  for (const auto& c : constraints)
    if (c.a == 0 && c.b == 0 && c.c < 0) return {};
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      const auto& p = constraints[i];
      const auto& q = constraints[j];
      Rational d = p.a * q.b - q.a * p.b;
      if (d == 0) continue;
      Vec2 v{(p.b * q.c - q.b * p.c) / d, (q.a * p.c - p.a * q.c) / d};
      bool feasible = std::all_of(constraints.begin(), constraints.end(),
                                  [&](const LinearConstraint& c) { return c.holds_closed(v); });
      if (feasible && std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(v);
    }
  }
  if (pts.size() < 3) return pts;
  double cx = 0, cy = 0;
  for (const auto& v : pts) {
    cx += to_double(v.x1);
    cy += to_double(v.x2);
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec2& u, const Vec2& v) {
    return std::atan2(to_double(u.x2) - cy, to_double(u.x1) - cx) < std::atan2(to_double(v.x2) - cy, to_double(v.x1) - cx);
  });
  return pts;
}

Rational twice_area(const std::vector<Vec2>& polygon) {
  Rational acc = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % polygon.size()];
    acc += p.x1 * q.x2 - q.x1 * p.x2;
  }
  return acc;
}

}  // namespace cyclecluster
