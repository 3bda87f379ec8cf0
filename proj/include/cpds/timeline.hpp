#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cpds/random.hpp"
#include "cpds/sampling.hpp"

namespace cpds {

// A state change; the component is Up at time 0 and states alternate.
struct TransitionEvent {
  double time_h = 0.0;
  bool up = false;

  bool operator==(const TransitionEvent&) const = default;
};

// Synthetic up/down chronology of one component over [0, horizon].
struct StateTransitionVector {
  ComponentKind kind = ComponentKind::Branch;
  int component_id = 0;
  double horizon_h = 0.0;
  std::vector<TransitionEvent> events;

  bool operator==(const StateTransitionVector&) const = default;
};

// Alternating time-to-failure / repair sampling until the horizon. A repair
// completing past the horizon leaves the vector ending Down; the partial
// outage still counts. Components with a zero failure rate stay Up and
// consume no draws.
StateTransitionVector generate_transition_vector(ComponentKind kind,
                                                 int component_id,
                                                 const ComponentReliability& params,
                                                 double horizon_h,
                                                 RandomStream& stream);

// State after applying all events with time <= t (repairs take effect at
// their own instant). t outside [0, horizon] throws std::out_of_range.
bool state_up_at(const StateTransitionVector& vec, double t);

// Earliest instant >= t at which the component is Up, or nullopt if it stays
// Down through the horizon.
std::optional<double> next_up_at_or_after(const StateTransitionVector& vec, double t);

double total_down_hours(const StateTransitionVector& vec);

struct StreamEvent {
  double time_h = 0.0;
  ComponentKind kind = ComponentKind::Branch;
  int component_id = 0;
  bool fail = false;

  bool operator==(const StreamEvent&) const = default;
};

// Chronological merge of several vectors. Ties break on component kind
// (branch < communication switch < controller), then component id. All
// vectors must share one horizon.
std::vector<StreamEvent> merge_streams(std::span<const StateTransitionVector> vectors);

}  // namespace cpds
