#include "cyclecluster/flow.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "cyclecluster/error.hpp"

namespace cyclecluster {

namespace {

// Breakpoints of the vector field in [0, 1]: s, r and the integer 1.
Rational next_breakpoint(const Rational& f, const Parameters& params) {
  if (f < params.s()) return params.s();
  if (f < params.r()) return params.r();
  return Rational(1);
}

Rational delay_for(const Rational& phase, const Rational& speed, const Parameters& params) {
  Rational f = frac(phase);
  return (next_breakpoint(f, params) - f) / speed;
}

constexpr std::size_t kMaxEventsPerMap = 10'000;

}  // namespace

std::string_view event_name(EventKind kind) {
  switch (kind) {
    case EventKind::ExitS: return "exit_S";
    case EventKind::EnterR: return "enter_R";
    case EventKind::ReachInteger: return "reach_integer";
  }
  return "unknown";
}

FlowState make_flow_state(std::vector<Rational> phases, const Parameters& params) {
  FlowState state;
  state.sigma = signal_fraction(phases, params);
  state.phases = std::move(phases);
  state.time = 0;
  return state;
}

Rational next_event_delay(const FlowState& state, const Parameters& params) {
  Rational best = -1;
  for (const Rational& p : state.phases) {
    Rational dt = delay_for(p, velocity(p, state.sigma, params), params);
    if (best < 0 || dt < best) best = dt;
  }
  return best;
}

EventBatch advance_to_next_event(const FlowState& state, const Parameters& params) {
  const std::size_t k = state.phases.size();
  std::vector<Rational> speeds(k);
  std::vector<Rational> delays(k);
  Rational dt = -1;
  for (std::size_t j = 0; j < k; ++j) {
    speeds[j] = velocity(state.phases[j], state.sigma, params);
    delays[j] = delay_for(state.phases[j], speeds[j], params);
    if (dt < 0 || delays[j] < dt) dt = delays[j];
  }

  EventBatch out;
  out.state.time = state.time + dt;
  out.state.phases.resize(k);
  std::vector<std::pair<std::size_t, EventKind>> fired;
  for (std::size_t j = 0; j < k; ++j) {
    if (delays[j] == dt) {
      Rational f = frac(state.phases[j]);
      Rational target = next_breakpoint(f, params);
      // Land exactly on the breakpoint; the lift keeps its integer part.
      out.state.phases[j] = state.phases[j] - f + target;
      if (target == params.s()) fired.emplace_back(j, EventKind::ExitS);
      if (target == params.r()) fired.emplace_back(j, EventKind::EnterR);
      if (target == 1) fired.emplace_back(j, EventKind::ReachInteger);
    } else {
      out.state.phases[j] = state.phases[j] + speeds[j] * dt;
    }
  }
  out.state.sigma = signal_fraction(out.state.phases, params);
  out.events.reserve(fired.size());
  for (auto [j, kind] : fired) out.events.push_back(Event{out.state.time, j, kind, out.state.phases});
  return out;
}

MapResult map_f_simulated(const SimplexPoint& p, const Parameters& params) {
  const std::size_t k = p.k();
  std::vector<Rational> phases;
  phases.reserve(k);
  phases.emplace_back(0);
  for (const Rational& x : p.coords()) phases.push_back(x);

  MapResult out;
  if (k >= 2 && phases[k - 1] == 1) {
    std::vector<Rational> image(phases.begin(), phases.end() - 1);
    out.image = validate_simplex(std::move(image), k);
    out.t1 = 0;
    out.trace.final_state = make_flow_state(std::move(phases), params);
    return out;
  }

  FlowState state = make_flow_state(std::move(phases), params);
  std::size_t guard = 0;
  while (state.phases[k - 1] < 1) {
    EventBatch batch = advance_to_next_event(state, params);
    for (Event& e : batch.events) out.trace.events.push_back(std::move(e));
    state = std::move(batch.state);
    if (++guard > kMaxEventsPerMap) throw Error(ErrorKind::HorizonTooLarge, "F did not terminate");
  }
  out.t1 = state.time;
  std::vector<Rational> image(state.phases.begin(), state.phases.end() - 1);
  out.image = validate_simplex(std::move(image), k);
  out.trace.final_state = std::move(state);
  return out;
}

ReturnResult return_map_simulated(const SimplexPoint& p, const Parameters& params) {
  ReturnResult out{p, Rational(0)};
  for (std::size_t i = 0; i < p.k(); ++i) {
    MapResult step = map_f_simulated(out.point, params);
    out.point = std::move(step.image);
    out.total_time += step.t1;
  }
  return out;
}

EventTrace simulate_flow(std::vector<Rational> initial_phases, const Parameters& params, const Rational& horizon,
                         FlowOptions options) {
  if (initial_phases.empty()) throw Error(ErrorKind::OutOfRange, "need at least one cluster");
  if (horizon <= 0) throw Error(ErrorKind::OutOfRange, "horizon must be positive");
  for (std::size_t j = 1; j < initial_phases.size(); ++j)
    if (initial_phases[j - 1] > initial_phases[j])
      throw Error(ErrorKind::OrderingViolation, "initial phases must be non-decreasing");
  if (initial_phases.back() - initial_phases.front() > 1)
    throw Error(ErrorKind::OutOfRange, "initial phases must lie within one unit of each other");

  EventTrace trace;
  FlowState state = make_flow_state(std::move(initial_phases), params);
  while (true) {
    Rational dt = next_event_delay(state, params);
    if (state.time + dt > horizon) {
      Rational rest = horizon - state.time;
      for (Rational& p : state.phases) p += velocity(p, state.sigma, params) * rest;
      state.time = horizon;
      state.sigma = signal_fraction(state.phases, params);
      break;
    }
    EventBatch batch = advance_to_next_event(state, params);
    for (Event& e : batch.events) trace.events.push_back(std::move(e));
    state = std::move(batch.state);
    if (trace.events.size() > options.max_events)
      throw Error(ErrorKind::HorizonTooLarge,
                  "more than " + std::to_string(options.max_events) + " events before the horizon");
    if (state.time == horizon) break;
  }
  trace.final_state = std::move(state);
  return trace;
}

std::vector<SectionCrossing> section_crossings(const EventTrace& trace) {
  std::vector<SectionCrossing> out;
  std::size_t i = 0;
  const auto& events = trace.events;
  while (i < events.size()) {
    std::size_t j = i;
    bool any = false;
    std::size_t lead = 0;
    while (j < events.size() && events[j].time == events[i].time) {
      if (events[j].kind == EventKind::ReachInteger) {
        lead = any ? std::max(lead, events[j].cluster) : events[j].cluster;
        any = true;
      }
      ++j;
    }
    if (any) {
      const auto& phases = events[i].phases;
      Rational base = phases[lead] - 1;
      SectionCrossing c{events[i].time, lead, {}};
      for (std::size_t m = 0; m < phases.size(); ++m) {
        if (m == lead) continue;
        Rational v = phases[m] - base;
        if (v > 1) v -= 1;
        c.coords.push_back(v);
      }
      std::sort(c.coords.begin(), c.coords.end());
      out.push_back(std::move(c));
    }
    i = j;
  }
  return out;
}

std::string trace_to_json_lines(const EventTrace& trace) {
  std::string out;
  for (const Event& e : trace.events) {
    nlohmann::ordered_json rec;
    rec["t"] = to_decimal_string(e.time);
    rec["t_exact"] = to_string(e.time);
    rec["cluster"] = e.cluster;
    rec["kind"] = std::string(event_name(e.kind));
    auto& dec = rec["phases"] = nlohmann::ordered_json::array();
    auto& exact = rec["phases_exact"] = nlohmann::ordered_json::array();
    for (const Rational& p : e.phases) {
      dec.push_back(to_decimal_string(p));
      exact.push_back(to_string(p));
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace cyclecluster
