#include "cyclecluster/sampling.hpp"

#include <stdexcept>

namespace cyclecluster {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Sampler::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Sampler::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return v % n;
}

Rational Sampler::unit(unsigned bits) {
  const std::uint64_t denom = std::uint64_t{1} << bits;
  std::uint64_t i = below(denom + 1);
  Rational q(mpz_class(std::to_string(i)), mpz_class(std::to_string(denom)));
  q.canonicalize();
  return q;
}

Rational Sampler::between(const Rational& lo, const Rational& hi, unsigned bits) {
  return lo + (hi - lo) * unit(bits);
}

Vec2 Sampler::triangle_point(unsigned bits) {
  Rational a = unit(bits);
  Rational b = unit(bits);
  if (b < a) std::swap(a, b);
  return {a, b};
}

Vec2 Sampler::polygon_interior_point(const std::vector<Vec2>& polygon, unsigned bits) {
  if (polygon.size() < 3) throw std::invalid_argument("polygon needs at least three vertices");
  // Fan from vertex 0, choosing a triangle with probability proportional to area.
  std::vector<Rational> cumulative;
  Rational total = 0;
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
    total += twice_area({polygon[0], polygon[i], polygon[i + 1]});
    cumulative.push_back(total);
  }
  if (total <= 0) throw std::invalid_argument("polygon has no interior");
  Rational pick = total * unit(bits);
  std::size_t tri = 0;
  while (tri + 1 < cumulative.size() && (cumulative[tri] < pick || cumulative[tri] == 0)) ++tri;
  const std::uint64_t top = std::uint64_t{1} << bits;
  // Strictly positive barycentric weights keep the point off every edge.
  Rational w0 = Rational(mpz_class(std::to_string(below(top) + 1)));
  Rational w1 = Rational(mpz_class(std::to_string(below(top) + 1)));
  Rational w2 = Rational(mpz_class(std::to_string(below(top) + 1)));
  Rational sum = w0 + w1 + w2;
  const Vec2& p = polygon[0];
  const Vec2& q = polygon[tri + 1];
  const Vec2& r = polygon[tri + 2];
  return {(w0 * p.x1 + w1 * q.x1 + w2 * r.x1) / sum, (w0 * p.x2 + w1 * q.x2 + w2 * r.x2) / sum};
}

}  // namespace cyclecluster
