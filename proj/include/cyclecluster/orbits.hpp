#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclecluster/geometry.hpp"
#include "cyclecluster/k3_map.hpp"

namespace cyclecluster {

/// Region labels visited by a periodic orbit of F, e.g. {7, 7, 8}.
using OrbitCode = std::vector<RegionLabel>;

/// "7-7-8"; 3a and 3b print as themselves.
std::string code_name(const OrbitCode& code);
/// Parses "7-7-8" or "7,7,8".
OrbitCode parse_code(std::string_view text);

enum class Stability { Source, Sink, Neutral, HyperbolicSaddle, NeutralUnstable, NeutralStableTransverse };
std::string_view stability_name(Stability s);

enum class EigenKind { ComplexPair, DoubleReal, DistinctReal };

/// Spectrum of a 2x2 rational matrix, read off its characteristic polynomial
/// lambda^2 - trace*lambda + det.
struct EigenData {
  Rational trace;
  Rational det;
  /// trace^2 - 4 det.
  Rational discriminant;
  EigenKind kind = EigenKind::DistinctReal;
  /// Real parts and imaginary parts as doubles (reporting only).
  std::array<double, 2> re{};
  std::array<double, 2> im{};
  std::array<double, 2> moduli{};
  /// Exact comparison of each modulus with 1: -1 below, 0 equal, +1 above.
  std::array<int, 2> side{};
};

EigenData eigen_data(const Mat2& a);

/// Exact classification from the signs in EigenData::side. Throws
/// Error(Indeterminate) when a float modulus lies within 1e-9 of 1 while the
/// exact comparison says it differs.
Stability classify_stability(const EigenData& e);

/// Closed r-interval [lo, hi] (ends may be open) for a fixed s.
struct ExistenceInterval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;
  std::string text;

  bool contains(const Rational& r) const;
};

enum class SolutionKind { Cycle, Segment, Polygon };
std::string_view solution_kind_name(SolutionKind kind);

struct OrbitRecord {
  OrbitCode code;
  std::string name;
  SolutionKind kind = SolutionKind::Cycle;

  /// Cycle: the iterates p, F(p), ...
  std::vector<Vec2> cycle;

  /// Segment family: start points base + t * direction, t in [t_lo, t_hi].
  Vec2 base;
  Vec2 direction;
  Rational t_lo;
  Rational t_hi;

  /// Polygon family: vertices of the closure of the start-point set.
  std::vector<Vec2> polygon;

  /// Closed-region constraints on the start point along the whole code.
  std::vector<LinearConstraint> start_constraints;

  /// prefixes[j] maps the start point to iterate j.
  std::vector<Affine2> prefixes;
  /// Composition of the pieces along the code (one period of F).
  Affine2 composed;
  EigenData eigen;
  /// Same data for the return map F^3 restricted to the orbit.
  EigenData return_eigen;
  Stability stability = Stability::Source;

  std::optional<ExistenceInterval> existence;

  /// Iterates of the family's start point at parameter t (Segment only).
  std::vector<Vec2> segment_cycle(const Rational& t) const;
  Vec2 segment_point(const Rational& t) const { return base + t * direction; }
};

/// Composes the affine pieces along the code and solves p = F^n(p) exactly.
/// A unique candidate is validated against every region closure along the
/// code (Error(NoOrbit) names the first violated constraint); a singular
/// system yields the segment or polygon of solutions within the closures
/// (Error(EmptyFamily) when nothing survives). A singular system whose
/// solution set is a single point is returned as a Cycle.
OrbitRecord solve_code(const OrbitCode& code, const K3Map& map);
OrbitRecord solve_code(const OrbitCode& code, const Parameters& params);

/// Checks that p is periodic with the given code: every iterate in the
/// closure of its coded region and F^n(p) == p. Throws Error(NoOrbit).
OrbitRecord verify_cycle(const OrbitCode& code, const Vec2& p, const K3Map& map);

/// One catalog entry that was not reported, with the reason.
struct OmittedOrbit {
  std::string name;
  std::string reason;
};

struct Catalog {
  std::vector<OrbitRecord> orbits;
  std::vector<OmittedOrbit> omitted;
};

/// Every orbit, cycle and family of the analysis whose existence interval
/// contains r, each verified by the solver.
Catalog catalog(const Parameters& params);

/// Independent route used by the parameter scan: solves the interior codes
/// without consulting any existence interval and keeps whatever the solver
/// validates.
struct Inventory {
  std::vector<OrbitRecord> orbits;
  /// Number of source points among the fixed points and 3-cycles.
  int n_sources = 0;
  bool has_neutral_triangle = false;
  /// 1..5 from the first fixed point found in the order 8, 7, 6, 3, 1.
  int region_index = 0;
};

Inventory inventory(const Parameters& params);

struct ParamRegion {
  int index = 0;
  ExistenceInterval interval;
  int expected_sources = 0;
  bool neutral_triangle = false;
  std::string summary;
};

/// Which of the five r-intervals of 2s <= r < 1 - 5s/3 contains r.
/// Throws Error(OutsideStudiedWedge).
ParamRegion classify_parameters(const Parameters& params);

struct NeutralTriangle {
  OrbitCode code;
  std::array<Vec2, 3> corners;
  std::vector<LinearConstraint> constraints;
  Vec2 fixed_point;

  bool contains_interior(const Vec2& p) const;
  bool contains_closed(const Vec2& p) const;
};

/// The invariant triangle of neutral period-3 points in regions (1), (3), (5).
/// Throws Error(NoTriangle) in regions (2) and (4).
NeutralTriangle neutral_triangle(const Parameters& params);

using TransitionGraph = std::map<RegionLabel, std::set<RegionLabel>>;

/// Allowed image labels of each region for 2s < r <= 1/2 - s/3.
const TransitionGraph& expected_transitions();

struct TransitionCheck {
  TransitionGraph observed;
  /// One message per offending sample or vertex.
  std::vector<std::string> violations;
};

/// Non-throwing form of transition_graph.
TransitionCheck check_transitions(const Parameters& params, std::size_t samples_per_region, std::uint64_t seed);

/// Samples strictly inside every region (and its vertices) and records the
/// image labels. Throws Error(SubcaseViolation) outside 2s < r <= 1/2 - s/3
/// and Error(InclusionViolation) when an image leaves the allowed targets.
TransitionGraph transition_graph(const Parameters& params, std::size_t samples_per_region, std::uint64_t seed);

struct Bifurcation {
  Rational r;
  std::string expression;
  std::string event;
};

/// Critical r values for fixed s, sorted by r.
std::vector<Bifurcation> bifurcation_boundaries(const Rational& s);

}  // namespace cyclecluster
