#include "cyclecluster/k3_map.hpp"

#include "cyclecluster/error.hpp"

namespace cyclecluster {

namespace {

// Affine form a*x1 + b*x2 + c, used to transcribe the table literally.
struct Form {
  Rational a, b, c;
};

Form operator+(const Form& f, const Form& g) { return {f.a + g.a, f.b + g.b, f.c + g.c}; }
Form operator-(const Form& f, const Form& g) { return {f.a - g.a, f.b - g.b, f.c - g.c}; }
Form operator*(const Rational& k, const Form& f) { return {k * f.a, k * f.b, k * f.c}; }
Form operator+(const Form& f, const Rational& k) { return {f.a, f.b, f.c + k}; }
Form operator+(const Rational& k, const Form& f) { return f + k; }
Form operator-(const Form& f, const Rational& k) { return {f.a, f.b, f.c - k}; }
Form operator-(const Rational& k, const Form& f) { return {-f.a, -f.b, k - f.c}; }

const Form X1{1, 0, 0};
const Form X2{0, 1, 0};
Form K(const Rational& k) { return {0, 0, k}; }

LinearConstraint ge(const Form& lhs, const Form& rhs) {
  Form d = lhs - rhs;
  return {d.a, d.b, d.c, false};
}
LinearConstraint gt(const Form& lhs, const Form& rhs) {
  Form d = lhs - rhs;
  return {d.a, d.b, d.c, true};
}
LinearConstraint le(const Form& lhs, const Form& rhs) { return ge(rhs, lhs); }
LinearConstraint lt(const Form& lhs, const Form& rhs) { return gt(rhs, lhs); }

AffinePiece make_piece(RegionLabel label, std::vector<LinearConstraint> conditions, const Form& first,
                       const Form& second) {
  AffinePiece piece;
  piece.label = label;
  piece.membership = {ge(X1, K(0)), le(X1, X2), le(X2, K(1))};
  for (auto& c : conditions) piece.membership.push_back(std::move(c));
  piece.map.linear = Mat2{{{{first.a, first.b}, {second.a, second.b}}}};
  piece.map.offset = {first.c, second.c};
  return piece;
}

}  // namespace

std::string_view label_name(RegionLabel label) {
  static constexpr std::array<std::string_view, 14> names = {"1", "2",  "3a", "3b", "4",  "5",  "6",
                                                             "7", "8", "9",  "10", "11", "12", "13"};
  return names[static_cast<std::size_t>(label)];
}

RegionLabel parse_label(std::string_view text) {
  for (RegionLabel l : kAllRegions)
    if (label_name(l) == text) return l;
  throw Error(ErrorKind::ParseError, "unknown region label '" + std::string(text) + "'");
}

bool AffinePiece::contains(const Vec2& p) const {
  for (const auto& c : membership)
    if (!c.holds(p)) return false;
  return true;
}

bool AffinePiece::closure_contains(const Vec2& p) const {
  for (const auto& c : membership)
    if (!c.holds_closed(p)) return false;
  return true;
}

std::vector<AffinePiece> build_pieces(const Parameters& params) {
  require_wedge(params);
  const Rational& r = params.r();
  const Rational& s = params.s();
  const Rational rs = r - s;
  const Rational third(1, 3), quarter(1, 4), fifth(1, 5);
  using R = RegionLabel;

  std::vector<AffinePiece> p;
  p.reserve(14);
  // 1: 0 <= x1 <= x2, 0 <= x2 < r-s
  p.push_back(make_piece(R::R1, {ge(X2, K(0)), lt(X2, K(rs))}, 1 - X2, 1 - X2 + X1));
  // 2: 0 <= x1 <= s, r-s+x1 <= x2 < r
  p.push_back(make_piece(R::R2, {le(X1, K(s)), ge(X2, rs + X1), lt(X2, K(r))},
                         1 - third * (5 * X2 - X1) + Rational(2 * rs / 3),
                         1 - third * (5 * X2 - 4 * X1) + Rational(2 * rs / 3)));
  // 3a: 0 <= x1 <= s, r-s <= x2 < r-s+x1
  p.push_back(make_piece(R::R3a, {le(X1, K(s)), ge(X2, K(rs)), lt(X2, rs + X1)},
                         1 - Rational(4, 3) * X2 + Rational(rs / 3),
                         1 - Rational(4, 3) * X2 + X1 + Rational(rs / 3)));
  // 3b: s < x1 <= r-s, r-s <= x2 < r
  p.push_back(make_piece(R::R3b, {gt(X1, K(s)), le(X1, K(rs)), ge(X2, K(rs)), lt(X2, K(r))},
                         1 - Rational(4, 3) * X2 + Rational(rs / 3),
                         1 - Rational(4, 3) * X2 + X1 + Rational(rs / 3)));
  // 4: r-s < x1 <= x2, r-s <= x2 < r
  p.push_back(make_piece(R::R4, {gt(X1, K(rs)), ge(X2, K(rs)), lt(X2, K(r))},
                         1 - Rational(4, 3) * X2 + Rational(rs / 3), 1 - Rational(4, 3) * (X2 - X1)));
  // 5: 0 <= x1 <= s, r <= x2 < 1 - 5s/3 + x1/3
  p.push_back(make_piece(R::R5, {le(X1, K(s)), ge(X2, K(r)), lt(X2, 1 - K(Rational(5 * s / 3)) + third * X1)},
                         1 - X2 + third * X1 - Rational(2 * s / 3),
                         1 - X2 + Rational(4, 3) * X1 - Rational(2 * s / 3)));
  // 6: s < x1 <= r-s, r <= x2 < 1 - 4s/3
  p.push_back(make_piece(R::R6, {gt(X1, K(s)), le(X1, K(rs)), ge(X2, K(r)), lt(X2, K(1 - Rational(4 * s / 3)))},
                         1 - X2 - Rational(s / 3), 1 - X2 + X1 - Rational(s / 3)));
  // 7: r-s < x1 <= r, r <= x2 <= 1 - 4s/3
  p.push_back(make_piece(R::R7, {gt(X1, K(rs)), le(X1, K(r)), ge(X2, K(r)), le(X2, K(1 - Rational(4 * s / 3)))},
                         1 - X2 - Rational(s / 3), 1 - X2 + Rational(4, 3) * X1 - Rational(r / 3)));
  // 8: r < x1 <= x2, r <= x2 <= 1 - 4s/3
  p.push_back(make_piece(R::R8, {gt(X1, K(r)), ge(X2, K(r)), le(X2, K(1 - Rational(4 * s / 3)))},
                         1 - X2 - Rational(s / 3), 1 - X2 + X1));
  // 9: 0 <= x1 <= s, 1 - 5(s-x1)/3 <= x2 <= 1
  p.push_back(make_piece(R::R9, {le(X1, K(s)), ge(X2, 1 - Rational(5, 3) * (K(s) - X1))},
                         3 * fifth * (1 - X2), X1 + 3 * fifth * (1 - X2)));
  // 10: 0 <= x1 <= s, 1 - (5s-x1)/3 <= x2 < 1 - 5(s-x1)/3
  p.push_back(make_piece(R::R10,
                         {le(X1, K(s)), ge(X2, 1 - third * (K(5 * s) - X1)), lt(X2, 1 - Rational(5, 3) * (K(s) - X1))},
                         3 * quarter * (1 - X2) + quarter * (X1 - s), 3 * quarter * (1 - X2) + quarter * (5 * X1 - s)));
  // 11: s < x1 <= r - 3(1-x2)/4, 1 - 4s/3 <= x2 <= 1
  p.push_back(make_piece(R::R11,
                         {gt(X1, K(s)), le(X1, r - 3 * quarter * (1 - X2)), ge(X2, K(1 - Rational(4 * s / 3)))},
                         3 * quarter * (1 - X2), X1 + 3 * quarter * (1 - X2)));
  // 12: r - 3(1-x2)/4 < x1 <= r, 1 - 4s/3 <= x2 <= 1
  p.push_back(make_piece(R::R12,
                         {gt(X1, r - 3 * quarter * (1 - X2)), le(X1, K(r)), ge(X2, K(1 - Rational(4 * s / 3)))},
                         3 * quarter * (1 - X2), 1 - X2 + Rational(4, 3) * X1 - Rational(r / 3)));
  // 13: r < x1 <= 1, 1 - 4s/3 < x2 <= 1
  p.push_back(make_piece(R::R13, {gt(X1, K(r)), le(X1, K(1)), gt(X2, K(1 - Rational(4 * s / 3)))},
                         3 * quarter * (1 - X2), 1 - X2 + X1));
  return p;
}

K3Map::K3Map(const Parameters& params) : params_(params), pieces_(build_pieces(params)) {}

RegionLabel K3Map::classify(const Vec2& p) const {
  for (const auto& piece : pieces_)
    if (piece.contains(p)) return piece.label;
  throw Error(ErrorKind::Unclassifiable, "no region contains (" + to_string(p.x1) + ", " + to_string(p.x2) + ")");
}

RegionLabel K3Map::classify(const SimplexPoint& p) const {
  if (p.k() != 3) throw Error(ErrorKind::OutOfRange, "the closed-form map needs k = 3");
  return classify(to_vec2(p));
}

std::vector<RegionLabel> K3Map::closure_labels(const Vec2& p) const {
  std::vector<RegionLabel> out;
  for (const auto& piece : pieces_)
    if (piece.closure_contains(p)) out.push_back(piece.label);
  return out;
}

Vec2 K3Map::apply(const Vec2& p) const { return piece(classify(p)).map(p); }

MapImage K3Map::apply(const SimplexPoint& p) const {
  RegionLabel label = classify(p);
  Vec2 image = piece(label).map(to_vec2(p));
  Rational t1 = image.x1;
  return {to_point(image), std::move(t1), label};
}

std::string_view band_name(Band band) {
  switch (band) {
    case Band::BeyondR: return "beyond r";
    case Band::BetweenRminusSAndR: return "between r-s and r";
    case Band::BetweenSAndRminusS: return "between s and r-s";
    case Band::BelowS: return "below s";
  }
  return "";
}

namespace {
Band band_of(const Rational& v, const Parameters& params) {
  if (v >= params.r()) return Band::BeyondR;
  if (v >= params.r() - params.s()) return Band::BetweenRminusSAndR;
  if (v >= params.s()) return Band::BetweenSAndRminusS;
  return Band::BelowS;
}
}  // namespace

VertexTable vertex_images(const Parameters& params) {
  K3Map map(params);
  const Rational& r = params.r();
  const Rational& s = params.s();
  const Rational top = 1 - Rational(4 * s / 3);
  const std::vector<std::pair<char, Vec2>> named = {
      {'a', {Rational(0), r - s}},
      {'b', {r - s, r - s}},
      {'c', {Rational(0), r}},
      {'d', {s, r}},
      {'e', {r - s, r}},
      {'f', {r, r}},
      {'g', {Rational(0), 1 - Rational(5 * s / 3)}},
      {'h', {s, top}},
      {'i', {r - s, top}},
      {'j', {r, top}},
      {'k', {top, top}},
      {'l', {s, Rational(1)}},
      {'m', {r, Rational(1)}},
  };
  VertexTable out;
  for (const auto& [name, v] : named) out.vertices.push_back({name, v, map.apply(v)});
  out.ab_abscissa = out.vertices[0].image.x1;
  out.ab_band = band_of(out.ab_abscissa, params);
  out.df_abscissa = out.vertices[3].image.x1;
  out.df_band = band_of(out.df_abscissa, params);
  return out;
}

}  // namespace cyclecluster
