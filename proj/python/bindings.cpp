#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclecluster/error.hpp"
#include "cyclecluster/flow.hpp"
#include "cyclecluster/k3_map.hpp"
#include "cyclecluster/orbits.hpp"
#include "cyclecluster/scan.hpp"

namespace py = pybind11;
using namespace cyclecluster;

namespace {

using Pair = std::pair<std::string, std::string>;

Parameters params_of(const std::string& r, const std::string& s) {
  return Parameters(parse_rational(r), parse_rational(s));
}

Pair pair_of(const Vec2& v) { return {to_string(v.x1), to_string(v.x2)}; }

Vec2 vec_of(const Pair& p) { return {parse_rational(p.first), parse_rational(p.second)}; }

py::dict eigen_dict(const EigenData& e) {
  py::dict d;
  d["trace"] = to_string(e.trace);
  d["det"] = to_string(e.det);
  d["moduli"] = std::vector<double>(e.moduli.begin(), e.moduli.end());
  d["kind"] = e.kind == EigenKind::ComplexPair ? "complex" : e.kind == EigenKind::DoubleReal ? "double" : "real";
  return d;
}

py::dict orbit_dict(const OrbitRecord& rec) {
  py::dict d;
  d["name"] = rec.name;
  d["code"] = code_name(rec.code);
  d["kind"] = std::string(solution_kind_name(rec.kind));
  d["stability"] = std::string(stability_name(rec.stability));
  d["eigen"] = eigen_dict(rec.eigen);
  if (rec.existence) d["existence"] = rec.existence->text;
  std::vector<Pair> pts;
  if (rec.kind == SolutionKind::Cycle) {
    for (const auto& p : rec.cycle) pts.push_back(pair_of(p));
    d["cycle"] = pts;
  } else if (rec.kind == SolutionKind::Segment) {
    d["segment"] = std::vector<Pair>{pair_of(rec.segment_point(rec.t_lo)), pair_of(rec.segment_point(rec.t_hi))};
  } else {
    for (const auto& p : rec.polygon) pts.push_back(pair_of(p));
    d["polygon"] = pts;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact core of the three-cluster cell-cycle model; rationals travel as \"p/q\" strings.";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("apply_map", [](const std::string& r, const std::string& s, const Pair& x) {
    K3Map map(params_of(r, s));
    MapImage im = map.apply(to_point(vec_of(x)));
    return py::make_tuple(pair_of(to_vec2(im.image)), to_string(im.t1), std::string(label_name(im.label)));
  });

  m.def("classify_region", [](const std::string& r, const std::string& s, const Pair& x) {
    return std::string(label_name(K3Map(params_of(r, s)).classify(vec_of(x))));
  });

  m.def("map_simulated", [](const std::string& r, const std::string& s, const std::vector<std::string>& x) {
    std::vector<Rational> coords;
    for (const auto& c : x) coords.push_back(parse_rational(c));
    std::size_t k = coords.size() + 1;
    MapResult res = map_f_simulated(validate_simplex(coords, k), params_of(r, s));
    std::vector<std::string> out;
    for (const auto& c : res.image.coords()) out.push_back(to_string(c));
    return py::make_tuple(out, to_string(res.t1));
  });

  m.def("return_map_simulated", [](const std::string& r, const std::string& s, const std::vector<std::string>& x) {
    std::vector<Rational> coords;
    for (const auto& c : x) coords.push_back(parse_rational(c));
    std::size_t k = coords.size() + 1;
    ReturnResult res = return_map_simulated(validate_simplex(coords, k), params_of(r, s));
    std::vector<std::string> out;
    for (const auto& c : res.point.coords()) out.push_back(to_string(c));
    return py::make_tuple(out, to_string(res.total_time));
  });

  m.def("solve_code", [](const std::string& r, const std::string& s, const std::string& code) {
    return orbit_dict(solve_code(parse_code(code), params_of(r, s)));
  });

  m.def("catalog", [](const std::string& r, const std::string& s) {
    py::list out;
    for (const auto& rec : catalog(params_of(r, s)).orbits) out.append(orbit_dict(rec));
    return out;
  });

  m.def("parameter_region", [](const std::string& r, const std::string& s) {
    ParamRegion reg = classify_parameters(params_of(r, s));
    py::dict d;
    d["index"] = reg.index;
    d["interval"] = reg.interval.text;
    d["sources"] = reg.expected_sources;
    d["neutral_triangle"] = reg.neutral_triangle;
    d["summary"] = reg.summary;
    return d;
  });

  m.def("neutral_triangle", [](const std::string& r, const std::string& s) {
    NeutralTriangle tri = neutral_triangle(params_of(r, s));
    std::vector<Pair> corners;
    for (const auto& c : tri.corners) corners.push_back(pair_of(c));
    return py::make_tuple(code_name(tri.code), corners);
  });

  m.def("transition_violations",
        [](const std::string& r, const std::string& s, std::size_t samples, std::uint64_t seed) {
          return check_transitions(params_of(r, s), samples, seed).violations;
        });

  m.def("map_check", [](const std::string& r, const std::string& s, std::size_t samples, std::uint64_t seed) {
    return report_to_json(map_check(params_of(r, s), samples, seed));
  });

  m.def("scan_csv",
        [](const std::vector<std::string>& s_values, std::size_t r_resolution, std::size_t samples,
           std::uint64_t seed, std::size_t threads) {
          ScanConfig cfg;
          for (const auto& s : s_values) cfg.s_values.push_back(parse_rational(s));
          cfg.r_resolution = r_resolution;
          cfg.samples = samples;
          cfg.seed = seed;
          cfg.threads = threads;
          py::gil_scoped_release release;
          auto cells = scan(cfg);
          return scan_to_csv(cells, cfg);
        });

  m.def("partition_json", [](const std::string& r, const std::string& s) { return partition_to_json(params_of(r, s)); });

  m.def("bifurcations", [](const std::string& s) {
    py::list out;
    for (const auto& b : bifurcation_boundaries(parse_rational(s)))
      out.append(py::make_tuple(to_string(b.r), b.expression, b.event));
    return out;
  });
}
