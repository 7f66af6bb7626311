// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                  run everything, exit 1 if any criterion fails
//   acceptance --only 3,7       run a subset
//   acceptance --expect-fail 6  exit 0 iff exactly the listed criteria fail

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cyclecluster/error.hpp"
#include "cyclecluster/flow.hpp"
#include "cyclecluster/k3_map.hpp"
#include "cyclecluster/orbits.hpp"
#include "cyclecluster/sampling.hpp"
#include "cyclecluster/scan.hpp"
#include "support.hpp"

using namespace cyclecluster;
using namespace cyclecluster::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string first_failure;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      first_failure = what;
      pass = false;
    }
  }
};

std::string pt(const Vec2& p) { return "(" + to_string(p.x1) + ", " + to_string(p.x2) + ")"; }

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Representatives of the five parameter regions.
const std::vector<std::pair<Rational, Rational>>& representatives() {
  static const std::vector<std::pair<Rational, Rational>> list = {
      {Q(1, 4), Q(1, 10)}, {Q(5, 12), Q(1, 8)}, {Q(13, 25), Q(1, 20)}, {Q(7, 10), Q(1, 20)}, {Q(4, 5), Q(1, 20)}};
  return list;
}

// 1 -----------------------------------------------------------------------
void oracle_equivalence(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  // (5/12, 1/8) doubles as the region (2) representative.
  const auto& params = representatives();
  const std::size_t samples = 10000;
  std::size_t total = 0, bad = 0;
  std::uint64_t seed = 101;
  for (const auto& [r, s] : params) {
    Parameters par(r, s);
    K3Map map(par);
    Sampler rng(seed = splitmix64(seed));
    std::size_t local_bad = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      SimplexPoint p = to_point(rng.triangle_point());
      MapImage closed = map.apply(p);
      MapResult flow = map_f_simulated(p, par);
      ++total;
      if (!(closed.image == flow.image) || closed.t1 != flow.t1) {
        ++local_bad;
        out.require(false, "(r,s)=(" + to_string(r) + "," + to_string(s) + ") point " + pt(to_vec2(p)));
      }
    }
    bad += local_bad;
    out.detail << "(" << to_string(r) << "," << to_string(s) << ") region " << classify_parameters(par).index
               << ": " << local_bad << "/" << samples << " mismatches; ";
  }
  double dt = seconds_since(t0);
  out.require(dt < 60.0, "runtime " + std::to_string(dt) + " s exceeds 60 s");
  out.detail << total << " exact comparisons, " << bad << " mismatches, " << dt << " s (limit 60 s)";
}

// 2 -----------------------------------------------------------------------
struct FixedPointCase {
  std::string name;
  OrbitCode code;
  std::function<Rational(const Rational&)> lo, hi;
  std::function<Vec2(const Rational&, const Rational&)> formula;
};

void fixed_points(Outcome& out) {
  using R = RegionLabel;
  auto top = [](const Rational& s) { return Rational(1 - 5 * s / 3); };
  std::vector<FixedPointCase> cases = {
      {"7", {R::R7}, [](auto& s) { return Rational((3 - 2 * s) / 9); }, [](auto& s) { return Rational((3 + 8 * s) / 9); },
       [](auto& r, auto& s) { return V((3 + r - 2 * s) / 10, (21 - 3 * r - 4 * s) / 30); }},
      {"8", {R::R8}, [](auto& s) { return Rational(2 * s); }, [](auto& s) { return Rational((3 - 2 * s) / 9); },
       [](auto&, auto& s) { return V((3 - 2 * s) / 9, (6 - s) / 9); }},
      {"6", {R::R6}, [](auto& s) { return Rational((3 + 8 * s) / 9); }, [](auto& s) { return Rational(2 * (3 - s) / 9); },
       [](auto&, auto& s) { return V((3 - s) / 9, 2 * (3 - s) / 9); }},
      {"3", {R::R3b}, [](auto& s) { return Rational(2 * (3 - s) / 9); }, [](auto& s) { return Rational(Q(2, 3) + s); },
       [](auto& r, auto& s) { return V((3 + r - s) / 11, 2 * (3 - r - s) / 11); }},
      {"1", {R::R1}, [](auto& s) { return Rational(Q(2, 3) + s); }, top,
       [](auto&, auto&) { return V(Q(1, 3), Q(2, 3)); }},
  };

  Sampler rng(202);
  const int n = 24;
  int region3_corrected = 0, region3_printed_fixed = 0;
  for (const auto& c : cases) {
    int matched = 0, rejected = 0;
    for (int i = 0; i < n; ++i) {
      // s < 1/8 keeps every interval inside the wedge non-empty.
      Rational s = strictly_between(rng, Q(1, 200), Q(1, 8));
      Rational lo = max(c.lo(s), Rational(2 * s)), hi = min(c.hi(s), top(s));
      Rational r = strictly_between(rng, lo, hi);
      Parameters par(r, s);
      K3Map map(par);
      Vec2 want = c.formula(r, s);
      OrbitRecord rec;
      try {
        rec = solve_code(c.code, map);
      } catch (const Error& e) {
        out.require(false, "fixed point " + c.name + " not found at r=" + to_string(r) + " s=" + to_string(s));
        continue;
      }
      Vec2 got = rec.cycle.front();
      // Independent check: the flow oracle must fix the solver's point.
      out.require(map_f_simulated(to_point(got), par).image == to_point(got),
                  "flow does not fix solver point " + pt(got) + " in " + c.name);
      if (got == want) ++matched;
      if (c.name == "3") {
        if (got == V((3 + r - s) / 11, 2 * (3 + r - s) / 11)) ++region3_corrected;
        if (map.apply(want) == want) ++region3_printed_fixed;
      }
      if (c.name != "3")
        out.require(got == want, "fixed point " + c.name + " at (" + to_string(r) + "," + to_string(s) +
                                     "): solver " + pt(got) + " vs formula " + pt(want));

      // Outside the interval (still in the wedge): no such fixed point.
      Rational r_out;
      bool below = c.lo(s) > 2 * s && (rng.below(2) == 0 || c.hi(s) >= top(s));
      if (below) r_out = strictly_between(rng, Rational(2 * s), c.lo(s));
      else r_out = strictly_between(rng, c.hi(s), top(s));
      bool none = true;
      std::vector<OrbitCode> codes = {c.code};
      if (c.name == "3") codes.push_back({R::R3a});
      for (const auto& code : codes)
        none = none && throws_kind(ErrorKind::NoOrbit, [&] { solve_code(code, Parameters(r_out, s)); });
      if (none) ++rejected;
      out.require(none, "fixed point " + c.name + " reported outside its interval at r=" + to_string(r_out));
    }
    out.detail << c.name << ": " << matched << "/" << n << " match, " << rejected << "/" << n << " NoOrbit outside; ";
  }
  out.detail << "region 3 printed formula ((3+r-s)/11, 2(3-r-s)/11) is fixed by F in " << region3_printed_fixed << "/"
             << n << " samples; ((3+r-s)/11, 2(3+r-s)/11) matches the solver in " << region3_corrected << "/" << n;
  out.require(region3_printed_fixed == n, "printed region-3 fixed point is not a fixed point of F");
}

// 3 -----------------------------------------------------------------------
void eigen_identities(Outcome& out) {
  using R = RegionLabel;
  const Mat2 I = Mat2::identity();
  int checked = 0;
  std::vector<std::pair<Rational, Rational>> region1 = {{Q(1, 4), Q(1, 10)}, {Q(7, 25), Q(1, 50)}, {Q(3, 10), Q(1, 8)}};
  std::vector<std::pair<Rational, Rational>> region5 = {{Q(4, 5), Q(1, 20)}, {Q(3, 4), Q(1, 25)}, {Q(17, 20), Q(1, 12)}};
  std::vector<std::pair<Rational, Rational>> region2 = {{Q(5, 12), Q(1, 8)}, {Q(2, 5), Q(1, 10)}, {Q(7, 20), Q(1, 20)}};
  for (const auto& [r, s] : region1) {
    K3Map map(Parameters(r, s));
    out.require(power(map.piece(R::R8).map.linear, 3) == I, "A8^3 != I");
    OrbitRecord fam = solve_code({R::R8, R::R8, R::R8}, map);
    out.require(fam.composed.linear == I, "8-8-8 composed linear part != I");
    OrbitRecord fp = solve_code({R::R8}, map);
    out.require(fp.return_eigen.trace == 2 && fp.return_eigen.det == 1 && fp.return_eigen.discriminant == 0,
                "fixed point 8: F^3 eigenvalues not a double 1");
    checked += 3;
  }
  for (const auto& [r, s] : region5) {
    K3Map map(Parameters(r, s));
    out.require(power(map.piece(R::R1).map.linear, 3) == I, "A1^3 != I");
    OrbitRecord fam = solve_code({R::R1, R::R1, R::R1}, map);
    out.require(fam.composed.linear == I, "1-1-1 composed linear part != I");
    checked += 2;
  }
  const double modulus = std::pow(4.0 / 3.0, 1.5);
  for (const auto& [r, s] : region2) {
    K3Map map(Parameters(r, s));
    Mat2 a = map.piece(R::R7).map.linear;
    Mat2 a3 = power(a, 3);
    OrbitRecord fp = solve_code({R::R7}, map);
    out.require(a.det() == Q(4, 3), "det A7 != 4/3");
    out.require(a3.det() == Q(64, 27), "det A7^3 != 64/27");
    out.require(fp.return_eigen.det == Q(64, 27), "fixed point 7: F^3 squared modulus != 64/27");
    out.require(fp.return_eigen.discriminant < 0 && fp.return_eigen.kind == EigenKind::ComplexPair,
                "fixed point 7: F^3 eigenvalues are not a complex pair");
    out.require(std::fabs(fp.return_eigen.moduli[0] - modulus) < 1e-12 &&
                    std::fabs(fp.return_eigen.moduli[1] - modulus) < 1e-12,
                "fixed point 7: |lambda| != (4/3)^(3/2)");
    out.require(fp.stability == Stability::Source, "fixed point 7 is not a source");
    checked += 5;
  }
  out.detail << checked << " exact identities: A8^3 = A1^3 = I, 8-8-8 and 1-1-1 compose to I, "
             << "region-7 cube has a complex pair with squared modulus det^3 = 64/27 (|lambda| ~ " << modulus << ")";
}

// 4 -----------------------------------------------------------------------
void cycle_formulas(Outcome& out) {
  Sampler rng(404);
  const int n = 12;
  int checked = 0;
  auto top = [](const Rational& s) { return Rational(1 - 5 * s / 3); };
  auto sample = [&](const Rational& s, Rational lo, Rational hi) {
    return strictly_between(rng, max(lo, Rational(2 * s)), min(hi, top(s)));
  };
  auto oracle_closes = [&](const std::vector<Vec2>& cycle, const Parameters& par) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Vec2& next = cycle[(i + 1) % cycle.size()];
      if (!(to_vec2(map_f_simulated(to_point(cycle[i]), par).image) == next)) return false;
    }
    return true;
  };
  auto expect_cycle = [&](const Catalog& cat, const std::string& name, const std::vector<Vec2>& want,
                          const Parameters& par) {
    const OrbitRecord* rec = find_orbit(cat, name);
    std::string at = " at (" + to_string(par.r()) + "," + to_string(par.s()) + ")";
    if (!rec) return out.require(false, name + " missing" + at);
    out.require(rec->cycle == want, name + at + ": got " + pt(rec->cycle.front()) + " want " + pt(want.front()));
    out.require(oracle_closes(want, par), name + at + ": flow oracle does not close the cycle");
    ++checked;
  };

  for (int i = 0; i < n; ++i) {
    Rational s = strictly_between(rng, Q(1, 200), Q(1, 8));
    const Rational half = Q(1, 2);
    {
      Rational r = sample(s, 2 * s, (3 - 2 * s) / 9);
      Parameters par(r, s);
      expect_cycle(catalog(par), "expanding cycle 7-7-8",
                   {V(r, 1 - r - s / 3), V(r, 2 * r + s / 3), V(1 - 2 * r - 2 * s / 3, 1 - r - s / 3)}, par);
    }
    {
      Rational r = sample(s, Q(2, 3) + s, 1);
      Parameters par(r, s);
      Rational u = r - s;
      expect_cycle(catalog(par), "expanding cycle 3-3-1", {V(2 * u - 1, u), V(1 - u, u), V(1 - u, 2 * (1 - u))}, par);
    }
    for (const char* name : {"expanding cycle 7-7-6", "expanding cycle 6-3-3"}) {
      // No closed coordinates are printed for these two; the solver's cycle
      // must be closed by the flow oracle and be expanding with real eigenvalues.
      bool first = std::string(name).find("7-7-6") != std::string::npos;
      Rational r = first ? sample(s, (3 + 8 * s) / 9, (3 + 2 * s) / 6) : sample(s, (3 + 2 * s) / 6, 2 * (3 - s) / 9);
      Parameters par(r, s);
      Catalog cat = catalog(par);
      const OrbitRecord* rec = find_orbit(cat, name);
      if (!rec) {
        out.require(false, std::string(name) + " missing at r=" + to_string(r));
        continue;
      }
      out.require(oracle_closes(rec->cycle, par), std::string(name) + ": flow oracle does not close the cycle");
      out.require(rec->stability == Stability::Source && rec->return_eigen.kind != EigenKind::ComplexPair,
                  std::string(name) + " is not expanding with real eigenvalues");
      ++checked;
    }
    {
      // Edge family (0,x2) -> (1-x2,1-x2) -> (x2,1), x2 in (1-r+s, r-s), and its two ends.
      Rational r = sample(s, half + s, 1);
      Parameters par(r, s);
      Catalog cat = catalog(par);
      Rational u = r - s;
      const OrbitRecord* fam = find_orbit(cat, "edge family 1-1-11");
      if (!fam) {
        out.require(false, "edge family missing at r=" + to_string(r));
      } else {
        out.require(fam->segment_point(fam->t_lo) == V(0, 1 - u) && fam->segment_point(fam->t_hi) == V(0, u),
                    "edge family ends differ from (0,1-r+s), (0,r-s)");
        for (int j = 0; j < 3; ++j) {
          Rational t = strictly_between(rng, fam->t_lo, fam->t_hi);
          Rational x2 = fam->segment_point(t).x2;
          std::vector<Vec2> want = {V(0, x2), V(1 - x2, 1 - x2), V(x2, 1)};
          out.require(fam->segment_cycle(t) == want, "edge family cycle formula at x2=" + to_string(x2));
          out.require(oracle_closes(want, par), "edge family: flow oracle does not close the cycle");
        }
        ++checked;
      }
      expect_cycle(cat, "edge orbit 2-1-11", {V(0, u), V(1 - u, 1 - u), V(u, 1)}, par);
      expect_cycle(cat, "edge orbit 1-4-11", {V(0, 1 - u), V(u, u), V(1 - u, 1)}, par);
    }
    {
      Rational r = sample(s, half + s / 3, half + s);
      Parameters par(r, s);
      Rational u = r - s;
      expect_cycle(catalog(par), "orbit 2-4-11 (interior end)",
                   {V((3 - 6 * u) / 4, (3 - 2 * u) / 4), V(u, (3 - 2 * u) / 4), V(u, 2 * u)}, par);
    }
    {
      Rational r = sample(s, half + s / 12, half + s);
      Parameters par(r, s);
      Rational u = r - s, y = (3 + 5 * u) / 11;
      Catalog cat = catalog(par);
      expect_cycle(cat, "edge orbit 2-4-11", {V(0, y), V(1 - (5 + u) / 11, 1 - (5 + u) / 11), V(y, 1)}, par);
      const OrbitRecord* fam = find_orbit(cat, "family 2-4-11");
      if (!fam) {
        out.require(false, "family 2-4-11 missing at r=" + to_string(r));
      } else {
        Rational t = strictly_between(rng, fam->t_lo, fam->t_hi);
        Vec2 in11 = fam->segment_cycle(t)[2];
        out.require(in11.x1 == (5 * u + 3 * in11.x2) / 11, "family 2-4-11 component in 11 off the line");
        out.require(oracle_closes(fam->segment_cycle(t), par), "family 2-4-11: flow oracle does not close");
        ++checked;
      }
    }
    {
      Rational r = sample(s, 2 * s, half + s / 12);
      Parameters par(r, s);
      expect_cycle(catalog(par), "edge orbit 2-8-11",
                   {V(0, r - s / 2), V(1 - r + s / 6, 1 - r + s / 6), V(r - s / 2, 1)}, par);
    }
  }

  // Continuation coincidences at the critical values.
  int coincidences = 0;
  for (const Rational& s : {Q(1, 40), Q(1, 20), Q(1, 16), Q(1, 10)}) {
    auto at = [&](const Rational& r) { return catalog(Parameters(r, s)); };
    auto pts = [&](const Catalog& cat, const std::string& name) {
      const OrbitRecord* rec = find_orbit(cat, name);
      if (!rec) throw Error(ErrorKind::NoOrbit, name + " missing");
      return rec->kind == SolutionKind::Segment ? std::vector<Vec2>{rec->segment_point(rec->t_lo)} : rec->cycle;
    };
    auto coincide = [&](const Rational& r, const std::string& expr, const std::string& a, const std::string& b) {
      try {
        Catalog cat = at(r);
        bool ok = same_point_set(pts(cat, a), pts(cat, b));
        out.require(ok, a + " and " + b + " differ at r=" + expr + " s=" + to_string(s));
        ++coincidences;
      } catch (const Error& e) {
        out.require(false, std::string(e.what()) + " at r=" + expr + " s=" + to_string(s));
      }
    };
    coincide((3 - 2 * s) / 9, "(3-2s)/9", "fixed point in 7", "fixed point in 8");
    coincide((3 - 2 * s) / 9, "(3-2s)/9", "fixed point in 8", "expanding cycle 7-7-8");
    coincide((3 + 8 * s) / 9, "(3+8s)/9", "fixed point in 7", "fixed point in 6");
    coincide((3 + 8 * s) / 9, "(3+8s)/9", "fixed point in 7", "expanding cycle 7-7-6");
    coincide((3 + 2 * s) / 6, "(3+2s)/6", "expanding cycle 7-7-6", "expanding cycle 6-3-3");
    coincide(2 * (3 - s) / 9, "2(3-s)/9", "fixed point in 6", "fixed point in 3");
    coincide(2 * (3 - s) / 9, "2(3-s)/9", "fixed point in 3", "expanding cycle 6-3-3");
    coincide(Q(2, 3) + s, "2/3+s", "fixed point in 3", "fixed point in 1");
    coincide(Q(2, 3) + s, "2/3+s", "fixed point in 1", "expanding cycle 3-3-1");
    coincide(Q(1, 2) + s, "1/2+s", "edge orbit 2-1-11", "edge orbit 1-4-11");
    coincide(Q(1, 2) + s, "1/2+s", "edge orbit 2-1-11", "orbit 2-4-11 (interior end)");
    coincide(Q(1, 2) + s, "1/2+s", "edge orbit 2-1-11", "edge family 1-1-11");
    coincide(Q(1, 2) + s / 12, "1/2+s/12", "edge orbit 2-8-11", "edge orbit 2-4-11");
  }
  out.detail << checked << " orbit formula checks (flow-closed), " << coincidences
             << " exact coincidences at (3-2s)/9, (3+8s)/9, (3+2s)/6, 2(3-s)/9, 2/3+s, 1/2+s, 1/2+s/12";
}

// 5 -----------------------------------------------------------------------
void neutral_triangles(Outcome& out) {
  Sampler rng(505);
  std::vector<std::pair<Rational, Rational>> with = {
      {Q(1, 4), Q(1, 10)}, {Q(9, 20), Q(1, 20)}, {Q(13, 25), Q(1, 20)}, {Q(4, 5), Q(1, 20)}};
  std::vector<std::pair<Rational, Rational>> without = {{Q(5, 12), Q(1, 8)}, {Q(7, 10), Q(1, 20)}};
  int inside_ok = 0, outside_ok = 0, oracle_ok = 0;
  for (const auto& [r, s] : with) {
    Parameters par(r, s);
    K3Map map(par);
    NeutralTriangle tri = neutral_triangle(par);
    std::vector<Vec2> poly(tri.corners.begin(), tri.corners.end());
    out.require(tri.contains_interior(tri.fixed_point), "fixed point outside its triangle");
    for (int i = 0; i < 100; ++i) {
      Vec2 p = rng.polygon_interior_point(poly);
      bool ok = tri.contains_interior(p) && iterate(map, p, 3) == p;
      if (ok) ++inside_ok;
      out.require(ok, "interior point " + pt(p) + " not period 3");
      if (i < 10) {
        bool flow = to_vec2(return_map_simulated(to_point(p), par).point) == p;
        if (flow) ++oracle_ok;
        out.require(flow, "flow return map does not fix " + pt(p));
      }
    }
    // Just outside: push an edge point outward by 1e-3 of the edge scale.
    for (int i = 0; i < 100; ++i) {
      int e = static_cast<int>(rng.below(3));
      const Vec2& a = tri.corners[e];
      const Vec2& b = tri.corners[(e + 1) % 3];
      Rational t = strictly_between(rng, 0, 1);
      Vec2 edge = a + t * (b - a);
      Vec2 outward{b.x2 - a.x2, -(b.x1 - a.x1)};
      Vec2 p = edge + strictly_between(rng, Q(1, 100000), Q(1, 1000)) * outward;
      if (p.x1 < 0 || p.x2 < p.x1 || p.x2 > 1) {
        --i;
        continue;
      }
      bool ok = !tri.contains_closed(p) && !(iterate(map, p, 3) == p);
      if (ok) ++outside_ok;
      out.require(ok, "outside point " + pt(p) + " is period 3");
    }
  }
  for (const auto& [r, s] : without)
    out.require(throws_kind(ErrorKind::NoTriangle, [&] { neutral_triangle(Parameters(r, s)); }),
                "triangle reported at (" + to_string(r) + "," + to_string(s) + ")");
  out.detail << "regions (1),(3),(5) at " << with.size() << " parameter pairs: " << inside_ok << "/" << 100 * with.size()
             << " interior points exactly period 3 (" << oracle_ok << " also via the flow), " << outside_ok << "/"
             << 100 * with.size() << " outside points not period 3; regions (2),(4) report NoTriangle";
}

// 6 -----------------------------------------------------------------------
void transition_graph_check(Outcome& out) {
  Parameters par(Q(5, 12), Q(1, 8));
  TransitionCheck check = check_transitions(par, 10000, 606);
  std::map<std::string, int> by_source;
  for (const auto& v : check.violations) {
    std::string key = v.substr(0, v.find(':'));
    std::string::size_type m = v.find(" maps to ");
    std::string target = m == std::string::npos ? "?" : v.substr(m + 9);
    if (target.rfind("region ", 0) == 0) key += " -> " + target.substr(7);
    else key += " -> (vertex) outside";
    ++by_source[key];
  }
  out.require(check.violations.empty(), std::to_string(check.violations.size()) + " inclusion violations");
  out.detail << "(5/12,1/8), 10^4 samples per region: " << check.violations.size() << " violations";
  for (const auto& [k, n] : by_source) out.detail << "; " << k << ": " << n;
  if (!check.violations.empty()) out.detail << "; e.g. " << check.violations.front();
}

// 7 -----------------------------------------------------------------------
void synchronization(Outcome& out) {
  Parameters par(Q(5, 12), Q(1, 8));
  Sampler rng(707);
  int converged = 0, worst_returns = 0;
  for (int i = 0; i < 20; ++i) {
    // Half the starts trail behind 0, half lead it (phases just below 1).
    Rational a = rng.between(0, Q(1, 100)), b = rng.between(0, Q(1, 100));
    Vec2 p = i % 2 == 0 ? V(min(a, b), max(a, b)) : V(a / 2, 1 - b / 2);
    if (p == V(0, 0)) p = V(0, Q(1, 200));
    double spread0 = circular_spread(p);
    out.require(spread0 <= 1e-2, "perturbation larger than 1e-2");
    int n = 0;
    while (n < 50 && circular_spread(p) >= 1e-6) {
      p = to_vec2(return_map_simulated(to_point(p), par).point);
      ++n;
    }
    bool ok = circular_spread(p) < 1e-6;
    if (ok) ++converged;
    worst_returns = std::max(worst_returns, n);
    out.require(ok, "start " + std::to_string(i) + " spread " + std::to_string(circular_spread(p)) +
                        " after 50 returns");
  }
  out.detail << "(5/12,1/8): " << converged << "/20 perturbations of size <= 1e-2 reach spread < 1e-6; "
             << "slowest took " << worst_returns << " flow returns (limit 50)";
}

// 8 -----------------------------------------------------------------------
void interior_instability(Outcome& out) {
  Parameters par(Q(5, 12), Q(1, 8));
  K3Map map(par);
  Vec2 fp = solve_code({RegionLabel::R7}, map).cycle.front();
  Sampler rng(808);
  int reached = 0, worst = 0;
  for (int i = 0; i < 50; ++i) {
    Vec2 p;
    do {
      p = rng.triangle_point();
    } while (boundary_distance(p) < 1e-2 ||
             std::hypot(to_double(p.x1 - fp.x1), to_double(p.x2 - fp.x2)) < 1e-2);
    int n = 0;
    double d = boundary_distance(p);
    while (n < 500 && d >= 1e-3) {
      p = iterate(map, p, 3);
      d = std::min(d, boundary_distance(p));
      ++n;
    }
    if (d < 1e-3) ++reached;
    worst = std::max(worst, n);
    out.require(d < 1e-3, "start " + std::to_string(i) + " stays " + std::to_string(d) + " from the boundary");
  }
  out.detail << "(5/12,1/8): " << reached << "/50 interior starts (>= 1e-2 from the fixed point and the boundary) "
             << "come within 1e-3 of the boundary; slowest took " << worst << " F^3 iterations (limit 500)";
}

// 9 -----------------------------------------------------------------------
void edge_transverse(Outcome& out) {
  Sampler rng(909);
  std::vector<std::pair<Rational, Rational>> params = {{Q(7, 10), Q(1, 20)}, {Q(4, 5), Q(1, 20)}, {Q(3, 5), Q(1, 20)},
                                                       {Q(3, 4), Q(1, 10)}};
  const Rational eps = Q(1, 10000);
  int transverse_ok = 0, along_ok = 0, total = 0, worst = 0;
  for (const auto& [r, s] : params) {
    Parameters par(r, s);
    K3Map map(par);
    Catalog cat = catalog(par);
    const OrbitRecord* fam = find_orbit(cat, "edge family 1-1-11");
    if (!fam) {
      out.require(false, "edge family missing at r=" + to_string(r));
      continue;
    }
    for (int i = 0; i < 5; ++i) {
      ++total;
      Rational t = strictly_between(rng, fam->t_lo, fam->t_hi);
      Vec2 base = fam->segment_point(t);
      // Off the edge x1 = 0 into the interior.
      Vec2 p = base + V(eps, 0);
      int n = 0;
      while (n < 100 && to_double(p.x1) >= 1e-6) {
        p = iterate(map, p, 3);
        ++n;
      }
      bool ok = to_double(p.x1) < 1e-6;
      if (ok) ++transverse_ok;
      worst = std::max(worst, n);
      out.require(ok, "transverse perturbation at " + pt(base) + " still " + to_decimal_string(p.x1) + " off");
      // Along the family: the shifted point is itself fixed by F^3.
      Vec2 q = base + V(0, eps);
      if (q.x2 >= fam->segment_point(fam->t_hi).x2) q = base - V(0, eps);
      Vec2 q100 = iterate(map, q, 300);
      bool along = q100 == q && abs(Rational(q100.x2 - base.x2)) == eps;
      if (along) ++along_ok;
      out.require(along, "along-family perturbation at " + pt(base) + " changed");
    }
  }
  out.detail << transverse_ok << "/" << total << " transverse 1e-4 perturbations return within 1e-6 of the edge "
             << "(slowest " << worst << " F^3 iterations, limit 100); " << along_ok << "/" << total
             << " along-family perturbations stay exactly 1e-4 after 100 iterations";
}

// 10 ----------------------------------------------------------------------
void domains_scan(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  ScanConfig cfg;
  cfg.s_values = cell_centres(Rational(0), Q(3, 11), 100);
  cfg.r_resolution = 400;
  std::vector<ScanCell> cells = scan(cfg);
  const Rational h = Q(1, 400);
  std::size_t mismatched = 0, far_mismatch = 0, transitions = 0, curves_checked = 0, unexplained = 0, missing = 0, inventory_bad = 0;
  for (std::size_t row = 0; row < cfg.s_values.size(); ++row) {
    const Rational& s = cfg.s_values[row];
    std::vector<Rational> curves = {2 * s, (3 - 2 * s) / 9, (3 + 8 * s) / 9, 2 * (3 - s) / 9, Q(2, 3) + s,
                                    1 - 5 * s / 3};
    auto near_curve = [&](const Rational& lo, const Rational& hi) {
      for (const auto& c : curves)
        if (c >= lo - h && c <= hi + h) return true;
      return false;
    };
    const ScanCell* line = &cells[row * cfg.r_resolution];
    for (std::size_t i = 0; i < cfg.r_resolution; ++i) {
      const ScanCell& c = line[i];
      int formula = 0;
      try {
        formula = classify_parameters(Parameters(c.r, s)).index;
      } catch (const Error&) {
        formula = 0;
      }
      if (formula != c.region_index) {
        ++mismatched;
        if (!near_curve(c.r, c.r)) ++far_mismatch;
      }
      if (c.region_index != 0) {
        int want_sources = c.region_index % 2 == 1 ? 3 : 1;
        bool want_triangle = c.region_index % 2 == 1;
        if (c.n_sources != want_sources || c.has_neutral_triangle != want_triangle) ++inventory_bad;
      }
      if (i + 1 < cfg.r_resolution && line[i + 1].region_index != c.region_index) {
        ++transitions;
        if (!near_curve(c.r, line[i + 1].r)) ++unexplained;
      }
    }
    // Every critical curve inside the wedge (and the row) must show a transition within one cell.
    for (const auto& cv : curves) {
      if (cv < 2 * s || cv > 1 - 5 * s / 3) continue;
      if (cv <= line[0].r || cv >= line[cfg.r_resolution - 1].r) continue;
      ++curves_checked;
      bool seen = false;
      for (std::size_t i = 0; i + 1 < cfg.r_resolution; ++i)
        if (line[i + 1].region_index != line[i].region_index && line[i].r >= cv - 2 * h && line[i + 1].r <= cv + 2 * h)
          seen = true;
      // Coinciding curves (e.g. 2/3+s = 1-5s/3 at s = 1/8) produce a single transition.
      if (!seen) ++missing;
    }
  }
  out.require(far_mismatch == 0, std::to_string(far_mismatch) + " cells disagree with the closed-form bands away from a curve");
  out.require(unexplained == 0, std::to_string(unexplained) + " transitions farther than one cell from every curve");
  out.require(missing == 0, std::to_string(missing) + " critical curves without a transition within one cell");
  out.require(inventory_bad == 0, std::to_string(inventory_bad) + " cells with the wrong source count or triangle flag");
  out.detail << "100 x 400 grid: " << transitions << " band transitions, " << unexplained << " off-curve, " << missing << "/"
             << curves_checked << " curve crossings unmatched, " << mismatched << " cells differ from the formula bands (" << far_mismatch
             << " beyond one cell), " << inventory_bad << " inventory mismatches, " << seconds_since(t0) << " s";
}

std::set<int> parse_set(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string only, expect_fail;
  app.add_option("--only", only, "comma-separated criteria to run");
  app.add_option("--expect-fail", expect_fail, "criteria documented as unattainable; exit 0 iff exactly these fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"oracle equivalence of the closed-form map", oracle_equivalence},
      {"fixed-point formulas", fixed_points},
      {"eigenvalue identities", eigen_identities},
      {"cycle formulas and continuation coincidences", cycle_formulas},
      {"neutral triangles", neutral_triangles},
      {"region transition inclusions", transition_graph_check},
      {"synchronization stability of the corner orbit", synchronization},
      {"interior orbits approach the boundary", interior_instability},
      {"edge family transverse stability", edge_transverse},
      {"five-band partition scan", domains_scan},
  };
  std::set<int> selected = parse_set(only), expected = parse_set(expect_fail), failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    if (!out.pass) failed.insert(id);
    std::cout << "CRITERION " << id << " " << (out.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ["
              << seconds_since(t0) << " s]: " << out.detail.str();
    if (!out.pass) std::cout << " | first failure: " << out.first_failure;
    std::cout << std::endl;
  }
  if (!expect_fail.empty()) {
    std::set<int> considered;
    for (int id : expected)
      if (selected.empty() || selected.count(id)) considered.insert(id);
    std::cout << "expected failures:";
    for (int id : considered) std::cout << " " << id;
    std::cout << "; observed failures:";
    for (int id : failed) std::cout << " " << id;
    std::cout << std::endl;
    return failed == considered ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}
