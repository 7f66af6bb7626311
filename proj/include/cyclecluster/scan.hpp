#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecluster/orbits.hpp"

namespace cyclecluster {

/// Differential test of the closed-form map against the flow oracle, plus
/// the parameter-region and transition summaries for one (r, s).
struct Report {
  Rational r;
  Rational s;
  std::size_t samples = 0;
  std::size_t mismatches = 0;
  /// Largest |closed form - flow| over all samples and both coordinates.
  Rational max_deviation;
  /// First mismatch: point, closed-form image and simulated image.
  std::optional<std::string> witness;
  /// 0 when the parameters fall outside the five regions.
  int region_index = 0;
  std::string inventory_summary;
  /// Only evaluated when 2s < r <= 1/2 - s/3.
  std::optional<std::size_t> transition_violations;
};

/// Samples points uniformly on a 2^20 rational grid of the triangle and
/// compares apply_F with map_f_simulated exactly. Throws Error(WedgeViolation).
Report map_check(const Parameters& params, std::size_t samples, std::uint64_t seed);

struct ScanConfig {
  /// s values swept, one row each.
  std::vector<Rational> s_values;
  Rational r_min = 0;
  Rational r_max = 1;
  /// Number of r cells per row; cell centres are sampled.
  std::size_t r_resolution = 400;
  /// Oracle samples per cell (0 disables the per-cell map check).
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// 0 means hardware concurrency, capped by CYCLECLUST_THREADS.
  std::size_t threads = 0;
};

/// s cell centres of (s_min, s_max) at the given resolution.
std::vector<Rational> cell_centres(const Rational& lo, const Rational& hi, std::size_t n);

struct ScanCell {
  Rational r;
  Rational s;
  int region_index = 0;
  int n_sources = 0;
  bool has_neutral_triangle = false;
  std::string notes;
};

/// Row-major grid (s outer, r inner). Cells outside the studied wedge are
/// tagged OutsideStudiedWedge; per-cell failures are tagged and the scan
/// continues.
std::vector<ScanCell> scan(const ScanConfig& config);

/// Worker count: requested (or hardware concurrency), capped by the
/// CYCLECLUST_THREADS environment variable.
std::size_t thread_count(std::size_t requested);

std::string scan_to_csv(const std::vector<ScanCell>& cells, const ScanConfig& config);
std::string scan_to_json(const std::vector<ScanCell>& cells, const ScanConfig& config);

/// Region partition: per region its inequalities and (A, b) as rational strings.
std::string partition_to_json(const Parameters& params);
std::string catalog_to_json(const Catalog& catalog);
std::string graph_to_json(const TransitionGraph& graph);
std::string report_to_json(const Report& report);
std::string bifurcations_to_json(const Rational& s, const std::vector<Bifurcation>& list);

}  // namespace cyclecluster
