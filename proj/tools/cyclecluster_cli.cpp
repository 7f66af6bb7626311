#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cyclecluster/error.hpp"
#include "cyclecluster/flow.hpp"
#include "cyclecluster/k3_map.hpp"
#include "cyclecluster/orbits.hpp"
#include "cyclecluster/scan.hpp"

using namespace cyclecluster;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty list '" + text + "'");
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::OutOfRange, "cannot write " + path);
  f << content;
}

std::string point_text(const Vec2& p) {
  return "(" + to_string(p.x1) + ", " + to_string(p.x2) + ") ~ (" + to_decimal_string(p.x1) + ", " +
         to_decimal_string(p.x2) + ")";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InclusionViolation:
    case ErrorKind::Unclassifiable:
      return kFailed;
    default:
      return kBadInput;
  }
}

struct Options {
  std::string r = "";
  std::string s = "";
  std::size_t k = 3;
  std::string init;
  std::string horizon = "1";
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::string grid = "100x400";
  std::string out;
  std::string format = "csv";
};

Parameters params_of(const Options& o) {
  if (o.r.empty() || o.s.empty()) throw Error(ErrorKind::ParseError, "--r and --s are required");
  return Parameters(parse_rational(o.r), parse_rational(o.s));
}

int run_simulate(const Options& o) {
  Parameters params = params_of(o);
  std::vector<Rational> init;
  if (o.init.empty()) {
    for (std::size_t j = 0; j < o.k; ++j) {
      Rational q(static_cast<long>(j), static_cast<long>(o.k));
      q.canonicalize();
      init.push_back(q);
    }
  } else {
    init = parse_list(o.init);
  }
  if (init.size() != o.k)
    throw Error(ErrorKind::OutOfRange, "--init has " + std::to_string(init.size()) + " phases but --k is " +
                                           std::to_string(o.k));
  EventTrace trace = simulate_flow(init, params, parse_rational(o.horizon));
  std::string lines = trace_to_json_lines(trace);
  if (!o.out.empty()) emit(o.out, lines);
  else std::cout << lines;
  std::size_t n = 0;
  for (const auto& c : section_crossings(trace)) {
    ++n;
    std::cout << "# crossing " << n << (n % o.k == 0 ? " (return)" : "") << " t=" << to_string(c.time)
              << " cluster=" << c.cluster << " x=";
    for (std::size_t i = 0; i < c.coords.size(); ++i) std::cout << (i ? "," : "") << to_string(c.coords[i]);
    std::cout << "\n";
  }
  return kOk;
}

int run_map_check(const Options& o) {
  Parameters params = params_of(o);
  Report rep = map_check(params, o.samples, o.seed);
  if (!o.out.empty()) emit(o.out, report_to_json(rep));
  std::cout << "map-check r=" << to_string(rep.r) << " s=" << to_string(rep.s) << " samples=" << rep.samples
            << " mismatches=" << rep.mismatches << " max_deviation=" << to_string(rep.max_deviation)
            << " region=" << rep.region_index;
  if (rep.transition_violations) std::cout << " transition_violations=" << *rep.transition_violations;
  std::cout << "\n";
  if (rep.witness) std::cout << "witness: " << *rep.witness << "\n";
  return rep.mismatches == 0 && rep.transition_violations.value_or(0) == 0 ? kOk : kFailed;
}

int run_orbits(const Options& o) {
  Parameters params = params_of(o);
  Catalog cat = catalog(params);
  try {
    ParamRegion reg = classify_parameters(params);
    std::cout << "parameter region (" << reg.index << "): " << reg.interval.text << "; " << reg.summary << "\n";
  } catch (const Error& e) {
    std::cout << "parameter region: none (" << e.what() << ")\n";
  }
  for (const auto& rec : cat.orbits) {
    std::cout << rec.name << "  code " << code_name(rec.code) << "  " << stability_name(rec.stability) << "  ["
              << rec.existence->text << "]\n";
    if (rec.kind == SolutionKind::Cycle) {
      for (const auto& p : rec.cycle) std::cout << "    " << point_text(p) << "\n";
    } else if (rec.kind == SolutionKind::Segment) {
      std::cout << "    segment " << point_text(rec.segment_point(rec.t_lo)) << " -- "
                << point_text(rec.segment_point(rec.t_hi)) << "\n";
    } else {
      std::cout << "    polygon";
      for (const auto& p : rec.polygon) std::cout << " " << point_text(p);
      std::cout << "\n";
    }
  }
  if (!o.out.empty()) emit(o.out, catalog_to_json(cat));
  return kOk;
}

int run_scan(const Options& o) {
  ScanConfig cfg;
  std::size_t ns = 100, nr = 400;
  {
    auto x = o.grid.find('x');
    if (x == std::string::npos) throw Error(ErrorKind::ParseError, "--grid must look like NSxNR, e.g. 100x400");
    try {
      ns = std::stoul(o.grid.substr(0, x));
      nr = std::stoul(o.grid.substr(x + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "--grid must look like NSxNR, e.g. 100x400");
    }
    if (ns == 0 || nr == 0) throw Error(ErrorKind::OutOfRange, "--grid resolutions must be positive");
  }
  cfg.s_values = o.s.empty() ? cell_centres(Rational(0), Rational(3, 11), ns) : parse_list(o.s);
  cfg.r_resolution = nr;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  if (o.format != "csv" && o.format != "json") throw Error(ErrorKind::ParseError, "--format must be csv or json");
  auto cells = scan(cfg);
  emit(o.out, o.format == "csv" ? scan_to_csv(cells, cfg) : scan_to_json(cells, cfg));
  return kOk;
}

int run_graph(const Options& o) {
  Parameters params = params_of(o);
  TransitionCheck check = check_transitions(params, o.samples, o.seed);
  emit(o.out, graph_to_json(check.observed));
  for (const auto& v : check.violations) std::cerr << "violation: " << v << "\n";
  return check.violations.empty() ? kOk : kFailed;
}

int run_partition(const Options& o) {
  emit(o.out, partition_to_json(params_of(o)));
  return kOk;
}

int run_bifurcations(const Options& o) {
  if (o.s.empty()) throw Error(ErrorKind::ParseError, "--s is required");
  Rational s = parse_rational(o.s);
  emit(o.out, bifurcations_to_json(s, bifurcation_boundaries(s)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-cluster cell-cycle model: exact return map, orbits and parameter scans"};
  app.require_subcommand(1);
  Options o;

  auto add_rs = [&](CLI::App* sub) {
    sub->add_option("--r", o.r, "start of the responsive region (p/q or decimal)");
    sub->add_option("--s", o.s, "length of the signaling region (p/q or decimal)");
  };

  auto* sim = app.add_subcommand("simulate", "event-driven flow; JSON-lines trace plus section crossings");
  add_rs(sim);
  sim->add_option("--k", o.k, "number of clusters")->check(CLI::PositiveNumber);
  sim->add_option("--init", o.init, "comma-separated initial phases (default j/k)");
  sim->add_option("--horizon", o.horizon, "final time");
  sim->add_option("--out", o.out, "trace file (default stdout)");

  auto* mc = app.add_subcommand("map-check", "closed-form map against the flow oracle");
  add_rs(mc);
  mc->add_option("--samples", o.samples, "number of sampled points");
  mc->add_option("--seed", o.seed, "random seed");
  mc->add_option("--out", o.out, "JSON report file");

  auto* orb = app.add_subcommand("orbits", "orbit catalog with stability and existence intervals");
  add_rs(orb);
  orb->add_option("--out", o.out, "JSON catalog file");

  auto* sc = app.add_subcommand("scan", "parameter sweep reproducing the five-band partition");
  sc->add_option("--s", o.s, "comma-separated s values (default: cell centres of (0, 3/11))");
  sc->add_option("--grid", o.grid, "NSxNR resolution, e.g. 100x400");
  sc->add_option("--samples", o.samples, "oracle samples per cell")->default_val(0);
  sc->add_option("--seed", o.seed, "random seed");
  sc->add_option("--format", o.format, "csv or json");
  sc->add_option("--out", o.out, "output file (default stdout)");

  auto* gr = app.add_subcommand("graph", "region transition graph with inclusion check");
  add_rs(gr);
  gr->add_option("--samples", o.samples, "samples per region");
  gr->add_option("--seed", o.seed, "random seed");
  gr->add_option("--out", o.out, "adjacency JSON file (default stdout)");

  auto* part = app.add_subcommand("partition", "region inequalities and affine pieces as JSON");
  add_rs(part);
  part->add_option("--out", o.out, "output file (default stdout)");

  auto* bif = app.add_subcommand("bifurcations", "critical r values for a given s");
  bif->add_option("--s", o.s, "signaling length");
  bif->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*sim) return run_simulate(o);
    if (*mc) return run_map_check(o);
    if (*orb) return run_orbits(o);
    if (*sc) return run_scan(o);
    if (*gr) return run_graph(o);
    if (*part) return run_partition(o);
    if (*bif) return run_bifurcations(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
