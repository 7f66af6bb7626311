#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecluster/model.hpp"

namespace cyclecluster {

enum class EventKind { ExitS, EnterR, ReachInteger };

std::string_view event_name(EventKind kind);

/// State of the k-cluster flow. Phases are lifts (never reduced mod 1) and
/// stay non-decreasing: phases[0] <= ... <= phases[k-1] <= phases[0] + 1.
struct FlowState {
  std::vector<Rational> phases;
  Rational time;
  SignalFraction sigma;
};

/// Builds a state at time 0 with sigma consistent with the phases.
FlowState make_flow_state(std::vector<Rational> phases, const Parameters& params);

struct Event {
  Rational time;
  std::size_t cluster = 0;
  EventKind kind = EventKind::ReachInteger;
  /// Phases right after the batch containing this event.
  std::vector<Rational> phases;
};

struct EventTrace {
  std::vector<Event> events;
  FlowState final_state;
};

struct EventBatch {
  FlowState state;
  std::vector<Event> events;
};

/// Exact time until the next breakpoint crossing (phase mod 1 reaching s, r
/// or an integer) at the current velocities.
Rational next_event_delay(const FlowState& state, const Parameters& params);

/// Advances every phase linearly to the next breakpoint time, processes all
/// events at that instant as one batch and recomputes sigma once afterwards.
EventBatch advance_to_next_event(const FlowState& state, const Parameters& params);

struct MapResult {
  SimplexPoint image;
  Rational t1;
  EventTrace trace;
};

/// F: run from (0, x_1, ..., x_{k-1}) until the leading lift reaches 1, then
/// return (x_0(t1), ..., x_{k-2}(t1)).
MapResult map_f_simulated(const SimplexPoint& p, const Parameters& params);

struct ReturnResult {
  SimplexPoint point;
  Rational total_time;
};

/// F^k, the return map to the section x_0 in N.
ReturnResult return_map_simulated(const SimplexPoint& p, const Parameters& params);

struct FlowOptions {
  std::size_t max_events = 1'000'000;
};

/// Full event trace over [0, horizon]; events exactly at the horizon are
/// included. Throws Error(HorizonTooLarge) past options.max_events.
EventTrace simulate_flow(std::vector<Rational> initial_phases, const Parameters& params, const Rational& horizon,
                         FlowOptions options = {});

/// A crossing of the section by the cluster that reaches an integer, with the
/// F-coordinates of the other clusters (lifts relative to that integer minus
/// one, in [0, 1]).
struct SectionCrossing {
  Rational time;
  std::size_t cluster = 0;
  std::vector<Rational> coords;
};

std::vector<SectionCrossing> section_crossings(const EventTrace& trace);

/// One JSON object per event: t, cluster, kind, phases (17 significant
/// digits) plus exact "p/q" strings for the time and phases.
std::string trace_to_json_lines(const EventTrace& trace);

}  // namespace cyclecluster
