#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cyclecluster {

/// Exact rational scalar. Every model quantity is held as a Rational;
/// doubles appear only in reports and tolerance-based comparisons.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "-0.125" / "1.5e-3".
/// Decimals are parsed exactly as fractions over powers of ten.
/// Throws Error(ErrorKind::ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" string (integers print without a denominator).
std::string to_string(const Rational& q);

/// 17 significant digits, the precision needed to round-trip a double.
std::string to_decimal_string(const Rational& q);

double to_double(const Rational& q);

mpz_class floor_int(const Rational& q);

/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace cyclecluster
