#include "cyclecluster/scan.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cyclecluster/error.hpp"
#include "cyclecluster/flow.hpp"
#include "cyclecluster/sampling.hpp"

namespace cyclecluster {

using json = nlohmann::ordered_json;

namespace {

std::string point_text(const Vec2& p) { return "(" + to_string(p.x1) + ", " + to_string(p.x2) + ")"; }

std::string summarize(const std::vector<OrbitRecord>& orbits) {
  std::string out;
  for (const auto& o : orbits) {
    if (!out.empty()) out += ';';
    out += code_name(o.code);
    if (o.kind != SolutionKind::Cycle) out += std::string("[") + std::string(solution_kind_name(o.kind)) + "]";
    out += ':';
    out += stability_name(o.stability);
  }
  return out;
}

void compare_with_flow(const Parameters& params, std::size_t samples, std::uint64_t seed, Report& rep) {
  K3Map map(params);
  rep.samples = samples;
  rep.max_deviation = 0;
  Sampler sampler(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Vec2 v = sampler.triangle_point();
    SimplexPoint p = to_point(v);
    MapImage closed = map.apply(p);
    MapResult flow = map_f_simulated(p, params);
    Rational dev = max(abs(Rational(closed.image.x(1) - flow.image.x(1))),
                       abs(Rational(closed.image.x(2) - flow.image.x(2))));
    dev = max(dev, abs(Rational(closed.t1 - flow.t1)));
    if (dev > rep.max_deviation) rep.max_deviation = dev;
    if (dev != 0) {
      ++rep.mismatches;
      if (!rep.witness) {
        rep.witness = "point " + point_text(v) + " region " + std::string(label_name(closed.label)) +
                      ": closed form " + point_text(to_vec2(closed.image)) + ", flow " +
                      point_text(to_vec2(flow.image));
      }
    }
  }
}

}  // namespace

Report map_check(const Parameters& params, std::size_t samples, std::uint64_t seed) {
  Report rep;
  rep.r = params.r();
  rep.s = params.s();
  compare_with_flow(params, samples, seed, rep);
  try {
    rep.region_index = classify_parameters(params).index;
  } catch (const Error&) {
    rep.region_index = 0;
  }
  rep.inventory_summary = summarize(inventory(params).orbits);
  if (params.subcase_a()) rep.transition_violations = check_transitions(params, 1000, splitmix64(seed)).violations.size();
  return rep;
}

std::vector<Rational> cell_centres(const Rational& lo, const Rational& hi, std::size_t n) {
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational t(static_cast<long>(2 * i + 1), static_cast<long>(2 * n));
    t.canonicalize();
    out.push_back(lo + (hi - lo) * t);
  }
  return out;
}

std::size_t thread_count(std::size_t requested) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CYCLECLUST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(n, 1);
}

namespace {

ScanCell evaluate_cell(const Rational& r, const Rational& s, const ScanConfig& config, std::uint64_t cell_seed) {
  ScanCell cell{r, s, 0, 0, false, ""};
  if (!(s > 0 && 2 * s < r && r < 1 - 5 * s / 3)) {
    cell.notes = "OutsideStudiedWedge";
    return cell;
  }
  try {
    Parameters params(r, s);
    Inventory inv = inventory(params);
    cell.region_index = inv.region_index;
    cell.n_sources = inv.n_sources;
    cell.has_neutral_triangle = inv.has_neutral_triangle;
    cell.notes = summarize(inv.orbits);
    int formula = classify_parameters(params).index;
    if (formula != inv.region_index) cell.notes += ";formula_region=" + std::to_string(formula);
    if (config.samples > 0) {
      Report rep;
      compare_with_flow(params, config.samples, cell_seed, rep);
      if (rep.mismatches) cell.notes += ";oracle_mismatches=" + std::to_string(rep.mismatches);
    }
  } catch (const Error& e) {
    cell.notes = std::string(kind_name(e.kind()));
  }
  return cell;
}

}  // namespace

std::vector<ScanCell> scan(const ScanConfig& config) {
  if (config.r_resolution == 0 || config.s_values.empty())
    throw Error(ErrorKind::OutOfRange, "scan resolutions must be positive");
  std::vector<Rational> rs = cell_centres(config.r_min, config.r_max, config.r_resolution);
  const std::size_t total = rs.size() * config.s_values.size();
  std::vector<ScanCell> cells(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const Rational& s = config.s_values[i / rs.size()];
      const Rational& r = rs[i % rs.size()];
      cells[i] = evaluate_cell(r, s, config, splitmix64(config.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1))));
    }
  };
  const std::size_t n = std::min(thread_count(config.threads), total);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

namespace {

std::string header_lines(const ScanConfig& config) {
  std::ostringstream h;
  h << "# cyclecluster parameter scan\n";
  h << "# r cells: " << config.r_resolution << " centres of (" << to_string(config.r_min) << ", "
    << to_string(config.r_max) << ")\n";
  h << "# s rows: " << config.s_values.size() << "\n";
  h << "# seed: " << config.seed << ", oracle samples per cell: " << config.samples << "\n";
  h << "# region_index: 1 2s<=r<=(3-2s)/9, 2 <=(3+8s)/9, 3 <=2(3-s)/9, 4 <=2/3+s, 5 <1-5s/3; 0 outside\n";
  h << "# region_index comes from the fixed point the solver finds (order 8, 7, 6, 3, 1)\n";
  return h.str();
}

}  // namespace

std::string scan_to_csv(const std::vector<ScanCell>& cells, const ScanConfig& config) {
  std::string out = header_lines(config);
  out += "r,s,region_index,n_sources,has_neutral_triangle,notes\n";
  for (const auto& c : cells) {
    out += to_string(c.r) + ',' + to_string(c.s) + ',' + std::to_string(c.region_index) + ',' +
           std::to_string(c.n_sources) + ',' + (c.has_neutral_triangle ? "1" : "0") + ",\"" + c.notes + "\"\n";
  }
  return out;
}

std::string scan_to_json(const std::vector<ScanCell>& cells, const ScanConfig& config) {
  json doc;
  doc["r_min"] = to_string(config.r_min);
  doc["r_max"] = to_string(config.r_max);
  doc["r_resolution"] = config.r_resolution;
  doc["s_rows"] = config.s_values.size();
  doc["seed"] = config.seed;
  doc["samples"] = config.samples;
  auto& arr = doc["cells"] = json::array();
  for (const auto& c : cells) {
    arr.push_back({{"r", to_string(c.r)},
                   {"s", to_string(c.s)},
                   {"region_index", c.region_index},
                   {"n_sources", c.n_sources},
                   {"has_neutral_triangle", c.has_neutral_triangle},
                   {"notes", c.notes}});
  }
  return doc.dump(1) + "\n";
}

namespace {

json vec_json(const Vec2& v) { return json::array({to_string(v.x1), to_string(v.x2)}); }

json constraint_json(const LinearConstraint& c) {
  return {{"a", to_string(c.a)}, {"b", to_string(c.b)}, {"c", to_string(c.c)}, {"strict", c.strict}};
}

json eigen_json(const EigenData& e) {
  const char* kind = e.kind == EigenKind::ComplexPair ? "complex" : e.kind == EigenKind::DoubleReal ? "double-real"
                                                                                                    : "real";
  return {{"trace", to_string(e.trace)},
          {"det", to_string(e.det)},
          {"kind", kind},
          {"re", {e.re[0], e.re[1]}},
          {"im", {e.im[0], e.im[1]}},
          {"moduli", {e.moduli[0], e.moduli[1]}}};
}

}  // namespace

std::string partition_to_json(const Parameters& params) {
  K3Map map(params);
  json doc;
  doc["r"] = to_string(params.r());
  doc["s"] = to_string(params.s());
  doc["constraint_form"] = "a*x1 + b*x2 + c >= 0 (> 0 when strict)";
  auto& regions = doc["regions"] = json::array();
  for (const auto& piece : map.pieces()) {
    json reg;
    reg["label"] = std::string(label_name(piece.label));
    auto& cons = reg["constraints"] = json::array();
    for (const auto& c : piece.membership) cons.push_back(constraint_json(c));
    const Mat2& a = piece.map.linear;
    reg["A"] = json::array({json::array({to_string(a(0, 0)), to_string(a(0, 1))}),
                            json::array({to_string(a(1, 0)), to_string(a(1, 1))})});
    reg["b"] = vec_json(piece.map.offset);
    std::vector<LinearConstraint> closed = piece.membership;
    for (auto& c : closed) c.strict = false;
    auto& verts = reg["vertices"] = json::array();
    for (const auto& v : polygon_vertices(closed)) verts.push_back(vec_json(v));
    regions.push_back(std::move(reg));
  }
  return doc.dump(1) + "\n";
}

std::string catalog_to_json(const Catalog& catalog) {
  json arr = json::array();
  for (const auto& o : catalog.orbits) {
    json rec;
    rec["name"] = o.name;
    rec["code"] = code_name(o.code);
    rec["kind"] = std::string(solution_kind_name(o.kind));
    if (o.kind == SolutionKind::Cycle) {
      auto& pts = rec["points"] = json::array();
      for (const auto& p : o.cycle) pts.push_back(vec_json(p));
    } else if (o.kind == SolutionKind::Segment) {
      auto& ends = rec["segment"] = json::array();
      ends.push_back(vec_json(o.segment_point(o.t_lo)));
      ends.push_back(vec_json(o.segment_point(o.t_hi)));
    } else {
      auto& verts = rec["polygon"] = json::array();
      for (const auto& p : o.polygon) verts.push_back(vec_json(p));
    }
    rec["eigen"] = eigen_json(o.eigen);
    rec["return_map_eigen"] = eigen_json(o.return_eigen);
    rec["stability"] = std::string(stability_name(o.stability));
    if (o.existence) {
      rec["existence"] = {{"lo", to_string(o.existence->lo)},
                          {"hi", to_string(o.existence->hi)},
                          {"lo_closed", o.existence->lo_closed},
                          {"hi_closed", o.existence->hi_closed},
                          {"text", o.existence->text}};
    }
    arr.push_back(std::move(rec));
  }
  json doc;
  doc["orbits"] = std::move(arr);
  auto& om = doc["omitted"] = json::array();
  for (const auto& o : catalog.omitted) om.push_back({{"name", o.name}, {"reason", o.reason}});
  return doc.dump(1) + "\n";
}

std::string graph_to_json(const TransitionGraph& graph) {
  json doc = json::object();
  for (const auto& [from, to] : graph) {
    json targets = json::array();
    for (RegionLabel t : to) targets.push_back(std::string(label_name(t)));
    doc[std::string(label_name(from))] = std::move(targets);
  }
  return doc.dump(1) + "\n";
}

std::string report_to_json(const Report& rep) {
  json doc;
  doc["r"] = to_string(rep.r);
  doc["s"] = to_string(rep.s);
  doc["samples"] = rep.samples;
  doc["mismatches"] = rep.mismatches;
  doc["max_deviation"] = to_string(rep.max_deviation);
  doc["witness"] = rep.witness ? json(*rep.witness) : json(nullptr);
  doc["region_index"] = rep.region_index;
  doc["inventory"] = rep.inventory_summary;
  doc["transition_violations"] = rep.transition_violations ? json(*rep.transition_violations) : json(nullptr);
  return doc.dump(1) + "\n";
}

std::string bifurcations_to_json(const Rational& s, const std::vector<Bifurcation>& list) {
  json doc;
  doc["s"] = to_string(s);
  auto& arr = doc["boundaries"] = json::array();
  for (const auto& b : list)
    arr.push_back({{"r", to_string(b.r)}, {"r_decimal", to_double(b.r)}, {"expression", b.expression}, {"event", b.event}});
  return doc.dump(1) + "\n";
}

}  // namespace cyclecluster
