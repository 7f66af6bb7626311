#include "cyclecluster/rational.hpp"

#include <cctype>
#include <cstdio>

#include "cyclecluster/error.hpp"

namespace cyclecluster {

namespace {

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw Error(ErrorKind::ParseError, "cannot parse '" + std::string(text) + "' as a rational (" + why + ")");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(long n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    body = body.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad(text, "bad exponent");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long scale = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view fraction = body.substr(dot + 1);
    if (whole.empty() && fraction.empty()) bad(text, "no digits");
    if ((!whole.empty() && !all_digits(whole)) || (!fraction.empty() && !all_digits(fraction)))
      bad(text, "non-digit characters");
    digits = std::string(whole) + std::string(fraction);
    scale = static_cast<long>(fraction.size());
  } else {
    if (!all_digits(body)) bad(text, "non-digit characters");
    digits = std::string(body);
  }
  Rational value{mpz_class(digits, 10)};
  long shift = exponent - scale;
  if (shift > 0) value *= pow10(shift);
  if (shift < 0) value /= pow10(-shift);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad(text, "empty");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) bad(text, "zero denominator");
    return num / den;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal_string(const Rational& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", q.get_d());
  return buf;
}

double to_double(const Rational& q) { return q.get_d(); }

mpz_class floor_int(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& q) { return q - Rational(floor_int(q)); }

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::WedgeViolation: return "WedgeViolation";
    case ErrorKind::OutsideStudiedWedge: return "OutsideStudiedWedge";
    case ErrorKind::SubcaseViolation: return "SubcaseViolation";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::NoOrbit: return "NoOrbit";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::NoTriangle: return "NoTriangle";
    case ErrorKind::InclusionViolation: return "InclusionViolation";
    case ErrorKind::HorizonTooLarge: return "HorizonTooLarge";
  }
  return "Error";
}

}  // namespace cyclecluster
