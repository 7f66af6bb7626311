#include "cyclecluster/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "cyclecluster/error.hpp"
#include "cyclecluster/sampling.hpp"

namespace cyclecluster {

std::string code_name(const OrbitCode& code) {
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out += '-';
    out += label_name(code[i]);
  }
  return out;
}

OrbitCode parse_code(std::string_view text) {
  OrbitCode code;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("-,", start);
    if (end == std::string_view::npos) end = text.size();
    code.push_back(parse_label(text.substr(start, end - start)));
    start = end + 1;
  }
  if (code.empty()) throw Error(ErrorKind::ParseError, "empty orbit code");
  return code;
}

std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::Source: return "source";
    case Stability::Sink: return "sink";
    case Stability::Neutral: return "neutral";
    case Stability::HyperbolicSaddle: return "hyperbolic-saddle";
    case Stability::NeutralUnstable: return "neutral-unstable";
    case Stability::NeutralStableTransverse: return "neutral-stable-transverse";
  }
  return "";
}

std::string_view solution_kind_name(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::Cycle: return "cycle";
    case SolutionKind::Segment: return "segment";
    case SolutionKind::Polygon: return "polygon";
  }
  return "";
}

namespace {

int sign(const Rational& q) { return sgn(q); }

// Sign of (sigma * sqrt(d) - q) for d >= 0, sigma = +1 or -1.
int sign_sqrt_minus(int sigma, const Rational& d, const Rational& q) {
  if (sigma < 0) return -sign_sqrt_minus(1, d, Rational(-q));
  if (q < 0) return 1;
  return sign(Rational(d - q * q));
}

}  // namespace

EigenData eigen_data(const Mat2& a) {
  EigenData e;
  e.trace = a.trace();
  e.det = a.det();
  e.discriminant = e.trace * e.trace - 4 * e.det;
  const double t = to_double(e.trace);
  const double disc = to_double(e.discriminant);
  if (e.discriminant < 0) {
    e.kind = EigenKind::ComplexPair;
    const double im = std::sqrt(-disc) / 2;
    e.re = {t / 2, t / 2};
    e.im = {-im, im};
    const double mod = std::sqrt(to_double(e.det));
    e.moduli = {mod, mod};
    const int side = sign(Rational(e.det - 1));
    e.side = {side, side};
    return e;
  }
  e.kind = e.discriminant == 0 ? EigenKind::DoubleReal : EigenKind::DistinctReal;
  const double root = std::sqrt(disc);
  e.re = {(t - root) / 2, (t + root) / 2};
  e.im = {0, 0};
  for (int i = 0; i < 2; ++i) {
    const int sigma = i == 0 ? -1 : 1;
    e.moduli[i] = std::fabs(e.re[i]);
    // lambda = (t + sigma sqrt(D)) / 2 compared with +1 and -1.
    const int above_one = sign_sqrt_minus(sigma, e.discriminant, Rational(2 - e.trace));
    const int above_minus_one = sign_sqrt_minus(sigma, e.discriminant, Rational(-2 - e.trace));
    if (above_one > 0 || above_minus_one < 0)
      e.side[i] = 1;
    else if (above_one == 0 || above_minus_one == 0)
      e.side[i] = 0;
    else
      e.side[i] = -1;
  }
  return e;
}

Stability classify_stability(const EigenData& e) {
  for (int i = 0; i < 2; ++i)
    if (e.side[i] != 0 && std::fabs(e.moduli[i] - 1) < 1e-9)
      throw Error(ErrorKind::Indeterminate, "eigenvalue modulus within 1e-9 of 1 but not equal to 1");
  int lo = std::min(e.side[0], e.side[1]);
  int hi = std::max(e.side[0], e.side[1]);
  if (lo > 0) return Stability::Source;
  if (hi < 0) return Stability::Sink;
  if (lo == 0 && hi == 0) return Stability::Neutral;
  if (lo < 0 && hi > 0) return Stability::HyperbolicSaddle;
  if (lo == 0) return Stability::NeutralUnstable;
  return Stability::NeutralStableTransverse;
}

bool ExistenceInterval::contains(const Rational& r) const {
  bool above = lo_closed ? r >= lo : r > lo;
  bool below = hi_closed ? r <= hi : r < hi;
  return above && below;
}

std::vector<Vec2> OrbitRecord::segment_cycle(const Rational& t) const {
  std::vector<Vec2> out;
  Vec2 p = segment_point(t);
  for (const auto& g : prefixes) out.push_back(g(p));
  return out;
}

namespace {

struct Composition {
  Affine2 total;
  std::vector<Affine2> prefixes;  // prefixes[j] maps the start point to iterate j
  std::vector<LinearConstraint> constraints;
  std::vector<std::size_t> owner;  // iterate index of each constraint
};

Composition compose(const OrbitCode& code, const K3Map& map) {
  if (code.empty()) throw Error(ErrorKind::ParseError, "empty orbit code");
  Composition c;
  Affine2 g;
  for (std::size_t j = 0; j < code.size(); ++j) {
    c.prefixes.push_back(g);
    const AffinePiece& piece = map.piece(code[j]);
    for (const auto& m : piece.membership) {
      LinearConstraint pulled = m.pulled_back(g);
      pulled.strict = false;
      c.constraints.push_back(std::move(pulled));
      c.owner.push_back(j);
    }
    g = piece.map.after(g);
  }
  c.total = g;
  return c;
}

std::vector<Vec2> iterates(const Composition& c, const Vec2& p) {
  std::vector<Vec2> out;
  for (const auto& g : c.prefixes) out.push_back(g(p));
  return out;
}

void attach_eigen(OrbitRecord& rec) {
  rec.eigen = eigen_data(rec.composed.linear);
  const unsigned n = static_cast<unsigned>(rec.code.size());
  const unsigned m = 3 / std::gcd(n, 3u);
  rec.return_eigen = eigen_data(power(rec.composed.linear, m));
  rec.stability = classify_stability(rec.eigen);
}

std::string point_text(const Vec2& p) { return "(" + to_string(p.x1) + ", " + to_string(p.x2) + ")"; }

void check_closure(const OrbitCode& code, const std::vector<Vec2>& pts, const K3Map& map) {
  for (std::size_t j = 0; j < code.size(); ++j) {
    for (const auto& m : map.piece(code[j]).membership) {
      if (!m.holds_closed(pts[j])) {
        throw Error(ErrorKind::NoOrbit, "code " + code_name(code) + ": iterate " + std::to_string(j) + " " +
                                            point_text(pts[j]) + " violates region " +
                                            std::string(label_name(code[j])) + " constraint " + m.describe());
      }
    }
  }
}

OrbitRecord make_cycle(const OrbitCode& code, const Composition& c, const Vec2& p) {
  OrbitRecord rec;
  rec.code = code;
  rec.name = "cycle " + code_name(code);
  rec.kind = SolutionKind::Cycle;
  rec.cycle = iterates(c, p);
  rec.start_constraints = c.constraints;
  rec.prefixes = c.prefixes;
  rec.composed = c.total;
  attach_eigen(rec);
  return rec;
}

}  // namespace

OrbitRecord solve_code(const OrbitCode& code, const K3Map& map) {
  Composition c = compose(code, map);
  const Mat2& a = c.total.linear;
  const Vec2& b = c.total.offset;
  Mat2 m = Mat2::identity() - a;
  Rational det = m.det();

  if (det != 0) {
    Vec2 p{(m(1, 1) * b.x1 - m(0, 1) * b.x2) / det, (m(0, 0) * b.x2 - m(1, 0) * b.x1) / det};
    std::vector<Vec2> pts = iterates(c, p);
    check_closure(code, pts, map);
    return make_cycle(code, c, p);
  }

  OrbitRecord rec;
  rec.code = code;
  rec.start_constraints = c.constraints;
  rec.prefixes = c.prefixes;
  rec.composed = c.total;

  const bool zero = m(0, 0) == 0 && m(0, 1) == 0 && m(1, 0) == 0 && m(1, 1) == 0;
  if (zero) {
    if (b.x1 != 0 || b.x2 != 0)
      throw Error(ErrorKind::EmptyFamily, "code " + code_name(code) + ": identity linear part with nonzero offset");
    std::vector<Vec2> poly = polygon_vertices(c.constraints);
    if (poly.empty()) throw Error(ErrorKind::EmptyFamily, "code " + code_name(code) + ": closures do not intersect");
    if (poly.size() == 1) return make_cycle(code, c, poly[0]);
    if (poly.size() == 2) {
      rec.kind = SolutionKind::Segment;
      rec.base = poly[0];
      rec.direction = poly[1] - poly[0];
      rec.t_lo = 0;
      rec.t_hi = 1;
    } else {
      rec.kind = SolutionKind::Polygon;
      rec.polygon = std::move(poly);
    }
    rec.name = "family " + code_name(code);
    attach_eigen(rec);
    return rec;
  }

  // Rank one: a single line m_i . p = b_i, consistent with the other row.
  int row = (m(0, 0) != 0 || m(0, 1) != 0) ? 0 : 1;
  const Rational& m1 = m(row, 0);
  const Rational& m2 = m(row, 1);
  const Rational& rhs = row == 0 ? b.x1 : b.x2;
  {
    int other = 1 - row;
    // other row = k * this row; rhs must scale the same way.
    Rational k = m1 != 0 ? Rational(m(other, 0) / m1) : Rational(m(other, 1) / m2);
    const Rational& orhs = other == 0 ? b.x1 : b.x2;
    if (orhs != k * rhs)
      throw Error(ErrorKind::EmptyFamily, "code " + code_name(code) + ": inconsistent singular system");
  }
  Vec2 base, dir;
  if (m1 != 0) {
    base = {rhs / m1, Rational(0)};
    dir = {Rational(-m2 / m1), Rational(1)};
  } else {
    base = {Rational(0), rhs / m2};
    dir = {Rational(1), Rational(0)};
  }
  bool bounded_lo = false, bounded_hi = false;
  Rational lo, hi;
  for (const auto& con : c.constraints) {
    Rational slope = con.a * dir.x1 + con.b * dir.x2;
    Rational at0 = con.value(base);
    if (slope == 0) {
      if (at0 < 0)
        throw Error(ErrorKind::EmptyFamily, "code " + code_name(code) + ": solution line violates " + con.describe());
      continue;
    }
    Rational t = -at0 / slope;
    if (slope > 0) {
      if (!bounded_lo || t > lo) lo = t;
      bounded_lo = true;
    } else {
      if (!bounded_hi || t < hi) hi = t;
      bounded_hi = true;
    }
  }
  if (!bounded_lo || !bounded_hi || lo > hi)
    throw Error(ErrorKind::EmptyFamily, "code " + code_name(code) + ": solution line misses the coded regions");
  if (lo == hi) return make_cycle(code, c, base + lo * dir);
  rec.kind = SolutionKind::Segment;
  rec.base = base;
  rec.direction = dir;
  rec.t_lo = lo;
  rec.t_hi = hi;
  rec.name = "family " + code_name(code);
  attach_eigen(rec);
  return rec;
}

OrbitRecord solve_code(const OrbitCode& code, const Parameters& params) { return solve_code(code, K3Map(params)); }

OrbitRecord verify_cycle(const OrbitCode& code, const Vec2& p, const K3Map& map) {
  Composition c = compose(code, map);
  std::vector<Vec2> pts = iterates(c, p);
  check_closure(code, pts, map);
  if (c.total(p) != p)
    throw Error(ErrorKind::NoOrbit, "code " + code_name(code) + ": " + point_text(p) + " is not periodic");
  return make_cycle(code, c, p);
}

namespace {

using R = RegionLabel;

std::vector<OrbitCode> region3_variants(const OrbitCode& code) {
  std::vector<OrbitCode> out{{}};
  for (RegionLabel l : code) {
    std::vector<OrbitCode> next;
    for (const auto& prefix : out) {
      if (l == R::R3a || l == R::R3b) {
        for (RegionLabel v : {R::R3a, R::R3b}) {
          auto c = prefix;
          c.push_back(v);
          next.push_back(std::move(c));
        }
      } else {
        auto c = prefix;
        c.push_back(l);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Tries every 3a/3b assignment; rethrows the first failure if none works.
OrbitRecord solve_any(const OrbitCode& code, const K3Map& map) {
  std::optional<Error> first;
  for (const auto& v : region3_variants(code)) {
    try {
      return solve_code(v, map);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoOrbit && e.kind() != ErrorKind::EmptyFamily) throw;
      if (!first) first = e;
    }
  }
  throw *first;
}

ExistenceInterval interval(Rational lo, Rational hi, std::string text, bool lo_closed = true, bool hi_closed = true) {
  return {std::move(lo), std::move(hi), lo_closed, hi_closed, std::move(text)};
}

struct CatalogEntry {
  std::string name;
  OrbitCode code;
  std::function<ExistenceInterval(const Rational& s)> existence;
  // When set, the named point is verified instead of solving the code.
  std::function<Vec2(const Rational& r, const Rational& s)> point;
};

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> list = [] {
    const Rational half(1, 2);
    std::vector<CatalogEntry> e;
    auto two_s = [](const Rational& s) { return Rational(2 * s); };
    auto p8 = [](const Rational& s) { return Rational((3 - 2 * s) / 9); };
    auto p7 = [](const Rational& s) { return Rational((3 + 8 * s) / 9); };
    auto p6 = [](const Rational& s) { return Rational(2 * (3 - s) / 9); };
    auto p3 = [](const Rational& s) { return Rational(Rational(2, 3) + s); };
    auto top = [](const Rational& s) { return Rational(1 - 5 * s / 3); };
    auto swap = [](const Rational& s) { return Rational((3 + 2 * s) / 6); };

    e.push_back({"fixed point in 7", {R::R7}, [=](const Rational& s) {
                   return interval(p8(s), p7(s), "(3-2s)/9 <= r <= (3+8s)/9");
                 }, nullptr});
    e.push_back({"fixed point in 8", {R::R8}, [=](const Rational& s) {
                   return interval(two_s(s), p8(s), "2s <= r <= (3-2s)/9");
                 }, nullptr});
    e.push_back({"fixed point in 6", {R::R6}, [=](const Rational& s) {
                   return interval(p7(s), p6(s), "(3+8s)/9 <= r <= 2(3-s)/9");
                 }, nullptr});
    e.push_back({"fixed point in 3", {R::R3b}, [=](const Rational& s) {
                   return interval(p6(s), p3(s), "2(3-s)/9 <= r <= 2/3+s");
                 }, nullptr});
    e.push_back({"fixed point in 1", {R::R1}, [=](const Rational& s) {
                   return interval(p3(s), Rational(1), "2/3+s <= r < 1", true, false);
                 }, nullptr});
    e.push_back({"expanding cycle 7-7-8", {R::R7, R::R7, R::R8}, [=](const Rational& s) {
                   return interval(two_s(s), p8(s), "2s <= r <= (3-2s)/9");
                 }, nullptr});
    e.push_back({"expanding cycle 7-7-6", {R::R7, R::R7, R::R6}, [=](const Rational& s) {
                   return interval(p7(s), min(swap(s), top(s)), "(3+8s)/9 <= r <= min((3+2s)/6, 1-5s/3)");
                 }, nullptr});
    e.push_back({"expanding cycle 6-3-3", {R::R6, R::R3b, R::R3b}, [=](const Rational& s) {
                   return interval(swap(s), p6(s), "(3+2s)/6 <= r <= 2(3-s)/9");
                 }, nullptr});
    e.push_back({"expanding cycle 3-3-1", {R::R3b, R::R3b, R::R1}, [=](const Rational& s) {
                   return interval(p3(s), Rational(1), "2/3+s <= r < 1", true, false);
                 }, nullptr});
    e.push_back({"neutral family 8-8-8", {R::R8, R::R8, R::R8}, [=](const Rational& s) {
                   return interval(two_s(s), p8(s), "2s <= r <= (3-2s)/9");
                 }, nullptr});
    e.push_back({"neutral family 6-6-6", {R::R6, R::R6, R::R6}, [=](const Rational& s) {
                   return interval(p7(s), p6(s), "(3+8s)/9 <= r <= 2(3-s)/9");
                 }, nullptr});
    e.push_back({"neutral family 1-1-1", {R::R1, R::R1, R::R1}, [=](const Rational& s) {
                   return interval(p3(s), Rational(1), "2/3+s <= r < 1", true, false);
                 }, nullptr});
    e.push_back({"corner orbit 1-13-9", {R::R1, R::R13, R::R9}, [=](const Rational& s) {
                   return interval(two_s(s), top(s), "2s < r < 1-5s/3", false, false);
                 }, [](const Rational&, const Rational&) { return Vec2{Rational(0), Rational(0)}; }});
    e.push_back({"edge family 1-1-11", {R::R1, R::R1, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s), top(s), "1/2+s <= r < 1-5s/3", true, false);
                 }, nullptr});
    e.push_back({"edge orbit 2-1-11", {R::R2, R::R1, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s), top(s), "1/2+s <= r < 1-5s/3", true, false);
                 }, nullptr});
    e.push_back({"edge orbit 1-4-11", {R::R1, R::R4, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s), top(s), "1/2+s <= r < 1-5s/3", true, false);
                 }, nullptr});
    e.push_back({"family 2-4-11", {R::R2, R::R4, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s / 12), Rational(half + s), "1/2+s/12 <= r <= 1/2+s");
                 }, nullptr});
    e.push_back({"orbit 2-4-11 (interior end)", {R::R2, R::R4, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s / 3), Rational(half + s), "1/2+s/3 <= r <= 1/2+s");
                 }, [](const Rational& r, const Rational& s) {
                   Rational u = r - s;
                   return Vec2{Rational((3 - 6 * u) / 4), Rational((3 - 2 * u) / 4)};
                 }});
    e.push_back({"edge orbit 2-4-11", {R::R2, R::R4, R::R11}, [=](const Rational& s) {
                   return interval(Rational(half + s / 12), Rational(half + s), "1/2+s/12 <= r <= 1/2+s");
                 }, [](const Rational& r, const Rational& s) {
                   return Vec2{Rational(0), Rational((3 + 5 * (r - s)) / 11)};
                 }});
    e.push_back({"edge orbit 2-8-11", {R::R2, R::R8, R::R11}, [=](const Rational& s) {
                   return interval(two_s(s), Rational(half + s / 12), "2s < r <= 1/2+s/12", false, true);
                 }, nullptr});
    e.push_back({"orbit 5-4-11", {R::R5, R::R4, R::R11}, [=](const Rational& s) {
                   Rational v = half + s / 3;
                   return interval(v, v, "r = 1/2+s/3");
                 }, nullptr});
    return e;
  }();
  return list;
}

}  // namespace

Catalog catalog(const Parameters& params) {
  K3Map map(params);
  Catalog out;
  for (const auto& entry : entries()) {
    ExistenceInterval ex = entry.existence(params.s());
    if (!ex.contains(params.r())) {
      out.omitted.push_back({entry.name, "outside existence interval " + ex.text});
      continue;
    }
    try {
      OrbitRecord rec;
      if (entry.point) {
        rec = verify_cycle(entry.code, entry.point(params.r(), params.s()), map);
      } else {
        rec = solve_any(entry.code, map);
      }
      rec.name = entry.name;
      rec.existence = ex;
      out.orbits.push_back(std::move(rec));
    } catch (const Error& e) {
      out.omitted.push_back({entry.name, std::string("solver rejected: ") + e.what()});
    }
  }
  return out;
}

Inventory inventory(const Parameters& params) {
  K3Map map(params);
  Inventory inv;
  const std::vector<OrbitCode> fixed = {{R::R8}, {R::R7}, {R::R6}, {R::R3a}, {R::R3b}, {R::R1}};
  const std::vector<int> fixed_region = {1, 2, 3, 4, 4, 5};
  const std::vector<OrbitCode> cycles = {{R::R7, R::R7, R::R8}, {R::R7, R::R7, R::R6}, {R::R6, R::R3b, R::R3b},
                                         {R::R3b, R::R3b, R::R1}};
  const std::vector<OrbitCode> families = {{R::R8, R::R8, R::R8}, {R::R6, R::R6, R::R6}, {R::R1, R::R1, R::R1}};

  std::vector<Vec2> sources;
  auto note_sources = [&](const OrbitRecord& rec) {
    if (rec.kind != SolutionKind::Cycle || rec.stability != Stability::Source) return;
    for (const auto& p : rec.cycle)
      if (std::find(sources.begin(), sources.end(), p) == sources.end()) sources.push_back(p);
  };

  for (std::size_t i = 0; i < fixed.size(); ++i) {
    try {
      OrbitRecord rec = solve_code(fixed[i], map);
      if (inv.region_index == 0) inv.region_index = fixed_region[i];
      note_sources(rec);
      inv.orbits.push_back(std::move(rec));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoOrbit && e.kind() != ErrorKind::EmptyFamily) throw;
    }
  }
  for (const auto& code : cycles) {
    try {
      OrbitRecord rec = solve_any(code, map);
      note_sources(rec);
      inv.orbits.push_back(std::move(rec));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoOrbit && e.kind() != ErrorKind::EmptyFamily) throw;
    }
  }
  for (const auto& code : families) {
    try {
      OrbitRecord rec = solve_code(code, map);
      if (rec.kind == SolutionKind::Polygon && twice_area(rec.polygon) > 0) inv.has_neutral_triangle = true;
      inv.orbits.push_back(std::move(rec));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoOrbit && e.kind() != ErrorKind::EmptyFamily) throw;
    }
  }
  inv.n_sources = static_cast<int>(sources.size());
  return inv;
}

ParamRegion classify_parameters(const Parameters& params) {
  const Rational& r = params.r();
  const Rational& s = params.s();
  const Rational top = 1 - 5 * s / 3;
  if (r < 2 * s || r >= top)
    throw Error(ErrorKind::OutsideStudiedWedge,
                "r = " + to_string(r) + " is outside 2s <= r < 1-5s/3 for s = " + to_string(s));
  const std::vector<ParamRegion> regions = {
      {1, interval(Rational(2 * s), Rational((3 - 2 * s) / 9), "2s <= r <= (3-2s)/9"), 3, true,
       "three sources (two in 7, one in 8) around a triangle of neutral period-3 points in 8"},
      {2, interval(Rational((3 - 2 * s) / 9), Rational((3 + 8 * s) / 9), "(3-2s)/9 < r <= (3+8s)/9", false), 1, false,
       "one source in 7"},
      {3, interval(Rational((3 + 8 * s) / 9), Rational(2 * (3 - s) / 9), "(3+8s)/9 < r <= 2(3-s)/9", false), 3, true,
       "three sources (7-7-6 or 6-3-3) around a triangle of neutral period-3 points in 6"},
      {4, interval(Rational(2 * (3 - s) / 9), Rational(Rational(2, 3) + s), "2(3-s)/9 < r <= 2/3+s", false), 1, false,
       "one source in 3"},
      {5, interval(Rational(Rational(2, 3) + s), top, "2/3+s < r < 1-5s/3", false, false), 3, true,
       "three sources (two in 3, one in 1) around a triangle of neutral period-3 points in 1"},
  };
  for (const auto& reg : regions)
    if (reg.interval.contains(r)) return reg;
  throw Error(ErrorKind::OutsideStudiedWedge, "no parameter region contains r = " + to_string(r));
}

bool NeutralTriangle::contains_interior(const Vec2& p) const {
  return std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.holds_strictly(p); });
}

bool NeutralTriangle::contains_closed(const Vec2& p) const {
  return std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.holds_closed(p); });
}

NeutralTriangle neutral_triangle(const Parameters& params) {
  ParamRegion region = classify_parameters(params);
  if (!region.neutral_triangle)
    throw Error(ErrorKind::NoTriangle, "parameter region (" + std::to_string(region.index) + ") has no neutral triangle");
  K3Map map(params);
  NeutralTriangle tri;
  OrbitCode fixed;
  switch (region.index) {
    case 1:
      tri.code = {R::R8, R::R8, R::R8};
      fixed = {R::R8};
      break;
    case 3:
      tri.code = {R::R6, R::R6, R::R6};
      fixed = {R::R6};
      break;
    default:
      tri.code = {R::R1, R::R1, R::R1};
      fixed = {R::R1};
      break;
  }
  OrbitRecord fam = solve_code(tri.code, map);
  if (fam.kind != SolutionKind::Polygon || fam.polygon.size() != 3)
    throw Error(ErrorKind::NoTriangle, "family " + code_name(tri.code) + " is not a triangle here");
  for (int i = 0; i < 3; ++i) tri.corners[i] = fam.polygon[i];
  for (int i = 0; i < 3; ++i) {
    const Vec2& p = tri.corners[i];
    const Vec2& q = tri.corners[(i + 1) % 3];
    // Left of the counter-clockwise edge p -> q.
    Rational a = -(q.x2 - p.x2);
    Rational b = q.x1 - p.x1;
    Rational c = -(a * p.x1 + b * p.x2);
    tri.constraints.push_back({a, b, c, true});
  }
  tri.fixed_point = solve_code(fixed, map).cycle.front();
  return tri;
}

const TransitionGraph& expected_transitions() {
  static const TransitionGraph graph = [] {
    TransitionGraph g;
    const std::set<R> to_8_13 = {R::R8, R::R13};
    const std::set<R> to_mid = {R::R1, R::R3a, R::R3b, R::R4, R::R6, R::R7, R::R8};
    g[R::R9] = g[R::R10] = {R::R1};
    g[R::R11] = {R::R1, R::R2, R::R3a};
    g[R::R12] = {R::R5};
    g[R::R13] = {R::R5, R::R9, R::R10};
    g[R::R1] = g[R::R2] = g[R::R3a] = g[R::R3b] = g[R::R4] = to_8_13;
    g[R::R5] = g[R::R6] = to_mid;
    g[R::R7] = {R::R6, R::R7, R::R8, R::R13};
    g[R::R8] = {R::R6, R::R7, R::R11, R::R12, R::R13};
    return g;
  }();
  return graph;
}

TransitionCheck check_transitions(const Parameters& params, std::size_t samples_per_region, std::uint64_t seed) {
  if (!params.subcase_a())
    throw Error(ErrorKind::SubcaseViolation, "the transition inclusions need 2s < r <= 1/2 - s/3");
  K3Map map(params);
  const TransitionGraph& allowed = expected_transitions();
  TransitionCheck out;
  std::uint64_t stream = seed;
  for (const auto& piece : map.pieces()) {
    const std::set<R>& targets = allowed.at(piece.label);
    out.observed[piece.label];
    std::vector<LinearConstraint> closed = piece.membership;
    for (auto& c : closed) c.strict = false;
    std::vector<Vec2> poly = polygon_vertices(closed);
    auto fail = [&](const Vec2& p, const std::string& what) {
      out.violations.push_back("region " + std::string(label_name(piece.label)) + ": point " + point_text(p) +
                               " maps to " + what);
    };
    for (const Vec2& v : poly) {
      Vec2 img = piece.map(v);
      bool ok = false;
      for (R t : targets)
        if (map.piece(t).closure_contains(img)) ok = true;
      if (!ok) fail(v, point_text(img) + ", outside the closure of every allowed target");
    }
    stream = splitmix64(stream);
    if (poly.size() < 3 || twice_area(poly) == 0) continue;
    Sampler sampler(stream);
    for (std::size_t i = 0; i < samples_per_region; ++i) {
      Vec2 p = sampler.polygon_interior_point(poly);
      R image = map.classify(piece.map(p));
      if (!targets.count(image)) fail(p, "region " + std::string(label_name(image)));
      out.observed[piece.label].insert(image);
    }
  }
  return out;
}

TransitionGraph transition_graph(const Parameters& params, std::size_t samples_per_region, std::uint64_t seed) {
  TransitionCheck check = check_transitions(params, samples_per_region, seed);
  if (!check.violations.empty()) throw Error(ErrorKind::InclusionViolation, check.violations.front());
  return std::move(check.observed);
}

std::vector<Bifurcation> bifurcation_boundaries(const Rational& s) {
  const Rational half(1, 2);
  std::vector<Bifurcation> out = {
      {2 * s, "2s", "lower edge of the studied wedge; fixed point 8, cycle 7-7-8 and family 8-8-8 persist down to it"},
      {(3 - 2 * s) / 9, "(3-2s)/9",
       "fixed point 7 <-> fixed point 8 + cycle 7-7-8 + neutral family 8-8-8 (pitchfork-like)"},
      {(3 + 8 * s) / 9, "(3+8s)/9",
       "fixed point 7 <-> fixed point 6 + cycle 7-7-6 + neutral family 6-6-6 (pitchfork-like)"},
      {(3 + 2 * s) / 6, "(3+2s)/6", "code exchange 7-7-6 <-> 6-3-3; coordinate ranges of family 6-6-6 switch"},
      {2 * (3 - s) / 9, "2(3-s)/9",
       "inverse pitchfork: fixed point 6 + cycle 6-3-3 + family 6-6-6 -> fixed point 3"},
      {Rational(2, 3) + s, "2/3+s", "fixed point 3 -> fixed point 1 + cycle 3-3-1 + neutral family 1-1-1"},
      {half + s / 12, "1/2+s/12", "edge orbits 2-8-11 and 2-4-11 merge (saddle-node-like)"},
      {half - 5 * s / 6, "1/2-5s/6", "printed lower end of the 2-4-11 family (bifurcation unclear)"},
      {half + s / 3, "1/2+s/3", "2-4-11 family reaches region 5; isolated 5-4-11 orbit (bifurcation unclear)"},
      {half + s, "1/2+s",
       "edge-orbit merge: family 1-1-11 with orbits 2-1-11, 1-4-11 appears; the 2-4-11 solutions merge"},
      {1 - 5 * s / 3, "1-5s/3", "upper edge of the studied wedge"},
  };
  std::stable_sort(out.begin(), out.end(), [](const Bifurcation& a, const Bifurcation& b) { return a.r < b.r; });
  return out;
}

}  // namespace cyclecluster
