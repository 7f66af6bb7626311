#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecluster/geometry.hpp"
#include "cyclecluster/model.hpp"

namespace cyclecluster {

/// The 13 polygonal subdomains of the triangle 0 <= x1 <= x2 <= 1 on which
/// F is affine (region 3 comes in two halves, 3a with x1 <= s and 3b with
/// x1 > s). Enumerator order is the tie-break order.
enum class RegionLabel { R1, R2, R3a, R3b, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13 };

inline constexpr std::array<RegionLabel, 14> kAllRegions = {
    RegionLabel::R1, RegionLabel::R2,  RegionLabel::R3a, RegionLabel::R3b, RegionLabel::R4,
    RegionLabel::R5, RegionLabel::R6,  RegionLabel::R7,  RegionLabel::R8,  RegionLabel::R9,
    RegionLabel::R10, RegionLabel::R11, RegionLabel::R12, RegionLabel::R13};

std::string_view label_name(RegionLabel label);
/// Accepts "1" ... "13", "3a", "3b".
RegionLabel parse_label(std::string_view text);

struct AffinePiece {
  RegionLabel label = RegionLabel::R1;
  /// Half-open conditions exactly as tabulated, plus 0 <= x1 <= x2 <= 1.
  std::vector<LinearConstraint> membership;
  Affine2 map;

  bool contains(const Vec2& p) const;
  bool closure_contains(const Vec2& p) const;
};

/// Emits the 13 (14 with 3a/3b split) pieces for parameters in the wedge.
/// Throws Error(WedgeViolation) otherwise.
std::vector<AffinePiece> build_pieces(const Parameters& params);

struct MapImage {
  SimplexPoint image;
  Rational t1;
  RegionLabel label;
};

/// Closed-form k=3 map F on the triangle.
class K3Map {
 public:
  explicit K3Map(const Parameters& params);

  const Parameters& params() const noexcept { return params_; }
  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }
  const AffinePiece& piece(RegionLabel label) const { return pieces_[static_cast<std::size_t>(label)]; }

  /// Lowest label whose half-open conditions hold. Throws Error(Unclassifiable)
  /// if none does.
  RegionLabel classify(const Vec2& p) const;
  RegionLabel classify(const SimplexPoint& p) const;
  /// Every label whose closed region contains p.
  std::vector<RegionLabel> closure_labels(const Vec2& p) const;

  Vec2 apply(const Vec2& p) const;
  /// Image, hit time t1 (= first image coordinate) and region.
  MapImage apply(const SimplexPoint& p) const;

 private:
  Parameters params_;
  std::vector<AffinePiece> pieces_;
};

inline Vec2 to_vec2(const SimplexPoint& p) { return {p.x(1), p.x(2)}; }
inline SimplexPoint to_point(const Vec2& v) { return make_point(v.x1, v.x2); }

struct NamedVertex {
  char name;
  Vec2 point;
  Vec2 image;
};

enum class Band { BeyondR, BetweenRminusSAndR, BetweenSAndRminusS, BelowS };
std::string_view band_name(Band band);

struct VertexTable {
  std::vector<NamedVertex> vertices;  // a ... m
  /// Abscissa and band of the vertical image segment [F(a), F(b)].
  Rational ab_abscissa;
  Band ab_band;
  /// Abscissa and band of the vertical image segment [F(d), F(f)].
  Rational df_abscissa;
  Band df_band;
};

/// Images of the partition vertices a ... m and the location of the two
/// vertical image segments relative to s, r - s and r.
VertexTable vertex_images(const Parameters& params);

}  // namespace cyclecluster
