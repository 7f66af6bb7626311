#include "cyclecluster/model.hpp"

#include <string>

#include "cyclecluster/error.hpp"

namespace cyclecluster {

Parameters::Parameters(Rational r, Rational s) : r_(std::move(r)), s_(std::move(s)) {
  if (!(s_ > 0 && s_ <= r_ && r_ < 1))
    throw Error(ErrorKind::InvalidParameters,
                "need 0 < s <= r < 1, got r=" + to_string(r_) + " s=" + to_string(s_));
}

bool Parameters::in_studied_wedge() const {
  return 2 * s_ < r_ && r_ < 1 - Rational(5, 3) * s_;
}

bool Parameters::subcase_a() const {
  return 2 * s_ < r_ && r_ <= Rational(1, 2) - s_ / 3;
}

void require_wedge(const Parameters& params) {
  if (!params.in_studied_wedge())
    throw Error(ErrorKind::WedgeViolation, "parameters r=" + to_string(params.r()) + " s=" +
                                               to_string(params.s()) + " violate 2s < r < 1 - 5s/3");
}

SimplexPoint validate_simplex(std::vector<Rational> coords, std::size_t k) {
  if (k == 0 || coords.size() + 1 != k)
    throw Error(ErrorKind::OutOfRange, "expected " + std::to_string(k == 0 ? 0 : k - 1) + " coordinates, got " +
                                           std::to_string(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] > 1)
      throw Error(ErrorKind::OutOfRange,
                  "x_" + std::to_string(i + 1) + " = " + to_string(coords[i]) + " is outside [0, 1]");
    if (i > 0 && coords[i - 1] > coords[i])
      throw Error(ErrorKind::OrderingViolation, "x_" + std::to_string(i) + " > x_" + std::to_string(i + 1) + " at (" +
                                                    std::to_string(i) + "," + std::to_string(i + 1) + ")");
  }
  return SimplexPoint(std::move(coords));
}

bool in_signaling(const Rational& phase, const Parameters& params) { return frac(phase) < params.s(); }

bool in_responsive(const Rational& phase, const Parameters& params) { return frac(phase) >= params.r(); }

SignalFraction signal_fraction(std::span<const Rational> phases, const Parameters& params) {
  long count = 0;
  for (const Rational& p : phases)
    if (in_signaling(p, params)) ++count;
  if (phases.empty()) return {Rational(0)};
  Rational sigma(count, static_cast<long>(phases.size()));
  sigma.canonicalize();
  return {sigma};
}

Rational velocity(const Rational& phase, const SignalFraction& sigma, const Parameters& params) {
  if (in_responsive(phase, params)) return 1 + sigma.value;
  return Rational(1);
}

}  // namespace cyclecluster
