#include "cpds/timeline.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace cpds {

StateTransitionVector generate_transition_vector(ComponentKind kind,
                                                 int component_id,
                                                 const ComponentReliability& params,
                                                 double horizon_h,
                                                 RandomStream& stream) {
  if (!(horizon_h > 0.0)) {
    throw std::invalid_argument("horizon must be > 0 hours");
  }
  StateTransitionVector vec;
  vec.kind = kind;
  vec.component_id = component_id;
  vec.horizon_h = horizon_h;
  if (params.never_fails()) {
    return vec;
  }
  double t = 0.0;
  for (;;) {
    double ttf = sample_time_to_failure(params.lambda_per_year, stream);
    while (ttf == 0.0) {  // measure-zero draw; keep event times strictly increasing
      ttf = sample_time_to_failure(params.lambda_per_year, stream);
    }
    const double fail_at = t + ttf;
    if (fail_at >= horizon_h) {
      break;
    }
    vec.events.push_back({fail_at, false});
    const double up_at = fail_at + sample_repair_time(params, stream);
    if (up_at >= horizon_h) {
      break;
    }
    vec.events.push_back({up_at, true});
    t = up_at;
  }
  return vec;
}

bool state_up_at(const StateTransitionVector& vec, double t) {
  if (!(t >= 0.0) || t > vec.horizon_h) {
    throw std::out_of_range("query time outside the vector horizon");
  }
  auto it = std::upper_bound(
      vec.events.begin(), vec.events.end(), t,
      [](double value, const TransitionEvent& e) { return value < e.time_h; });
  if (it == vec.events.begin()) {
    return true;
  }
  return std::prev(it)->up;
}

std::optional<double> next_up_at_or_after(const StateTransitionVector& vec, double t) {
  if (state_up_at(vec, t)) {
    return t;
  }
  auto it = std::upper_bound(
      vec.events.begin(), vec.events.end(), t,
      [](double value, const TransitionEvent& e) { return value < e.time_h; });
  for (; it != vec.events.end(); ++it) {
    if (it->up) {
      return it->time_h;
    }
  }
  return std::nullopt;
}

double total_down_hours(const StateTransitionVector& vec) {
  double down = 0.0;
  double down_since = 0.0;
  bool is_down = false;
  for (const TransitionEvent& e : vec.events) {
    if (!e.up && !is_down) {
      is_down = true;
      down_since = e.time_h;
    } else if (e.up && is_down) {
      is_down = false;
      down += e.time_h - down_since;
    }
  }
  if (is_down) {
    down += vec.horizon_h - down_since;
  }
  return down;
}

std::vector<StreamEvent> merge_streams(std::span<const StateTransitionVector> vectors) {
  std::vector<StreamEvent> merged;
  std::size_t total = 0;
  for (const auto& vec : vectors) {
    if (!vectors.empty() && vec.horizon_h != vectors.front().horizon_h) {
      throw std::invalid_argument("cannot merge vectors with different horizons");
    }
    total += vec.events.size();
  }
  merged.reserve(total);
  for (const auto& vec : vectors) {
    for (const TransitionEvent& e : vec.events) {
      merged.push_back({e.time_h, vec.kind, vec.component_id, !e.up});
    }
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const StreamEvent& a, const StreamEvent& b) {
                     return std::tuple(a.time_h, static_cast<int>(a.kind),
                                       a.component_id) <
                            std::tuple(b.time_h, static_cast<int>(b.kind),
                                       b.component_id);
                   });
  return merged;
}

}  // namespace cpds
