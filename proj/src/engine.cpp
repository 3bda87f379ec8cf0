#include "cpds/engine.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace cpds {

void Scenario::validate() const {
  if (!network) {
    throw std::invalid_argument("scenario has no network");
  }
  if (!(horizon_years > 0.0)) {
    throw std::invalid_argument("horizon must be > 0 years");
  }
  if (replications < 1) {
    throw std::invalid_argument("at least one replication is required");
  }
  branch_class.validate("branch class");
  comm_switch_class.validate("communication switch class");
  controller_class.validate("controller class");
  rto.validate();
  for (const Branch& b : network->elec.branches) {
    branch_reliability(b).validate("branch " + std::to_string(b.id));
  }
}

ComponentReliability Scenario::branch_reliability(const Branch& branch) const {
  ComponentReliability rel = branch_class;
  if (branch.lambda_override) {
    rel.lambda_per_year = *branch.lambda_override;
  }
  return rel;
}

ReplicationResult run_replication(const Scenario& scenario, int replication) {
  const Network& net = *scenario.network;
  const double horizon_h = scenario.horizon_years * kHoursPerYear;
  const auto rep = static_cast<std::uint64_t>(replication);

  std::vector<StateTransitionVector> branch_vecs;
  branch_vecs.reserve(net.elec.branches.size());
  for (const Branch& b : net.elec.branches) {
    RandomStream stream = RandomStream::substream(
        scenario.root_seed, rep, component_key(ComponentKind::Branch, b.id));
    branch_vecs.push_back(generate_transition_vector(
        ComponentKind::Branch, b.id, scenario.branch_reliability(b), horizon_h,
        stream));
  }
  std::vector<StateTransitionVector> comm_vecs;
  comm_vecs.reserve(net.cyber.ring.size());
  for (int id : net.cyber.ring) {
    RandomStream stream = RandomStream::substream(
        scenario.root_seed, rep, component_key(ComponentKind::CommSwitch, id));
    comm_vecs.push_back(generate_transition_vector(
        ComponentKind::CommSwitch, id, scenario.comm_switch_class, horizon_h,
        stream));
  }
  std::vector<StateTransitionVector> ctrl_vecs;
  ctrl_vecs.reserve(net.elec.branches.size());
  for (const Branch& b : net.elec.branches) {
    RandomStream stream = RandomStream::substream(
        scenario.root_seed, rep, component_key(ComponentKind::Controller, b.id));
    ctrl_vecs.push_back(generate_transition_vector(
        ComponentKind::Controller, b.id, scenario.controller_class, horizon_h,
        stream));
  }

  const CyberTimeline cyber(net, std::move(comm_vecs), std::move(ctrl_vecs));
  RandomStream rto_stream =
      RandomStream::substream(scenario.root_seed, rep, rto_stream_key());

  // Per-branch repair windows, consumed in step with the fail events.
  struct Window {
    double fail_h;
    double repair_h;
  };
  std::vector<std::vector<Window>> windows(net.elec.branches.size());
  for (std::size_t i = 0; i < branch_vecs.size(); ++i) {
    const auto& events = branch_vecs[i].events;
    for (std::size_t k = 0; k < events.size(); ++k) {
      if (!events[k].up) {
        const double end =
            k + 1 < events.size() ? events[k + 1].time_h : horizon_h;
        windows[i].push_back({events[k].time_h, end - events[k].time_h});
      }
    }
  }
  std::vector<std::size_t> window_cursor(net.elec.branches.size(), 0);

  const std::vector<StreamEvent> events = merge_streams(branch_vecs);
  const SwitchConfiguration base = net.elec.base_configuration();

  std::vector<RestorationPlan> base_plans(net.elec.branches.size());
  std::vector<char> base_plan_ready(net.elec.branches.size(), 0);

  ReplicationResult result;
  result.replication = replication;
  result.tallies.reserve(net.elec.branches.size());
  for (const Branch& b : net.elec.branches) {
    result.tallies.push_back({b.id, b.customers, 0, 0.0});
  }

  std::vector<int> down;  // sorted branch ids currently failed
  std::vector<std::pair<int, RestorationPlan>> active;  // by faulted branch id
  int fault_seq = 0;

  auto current_config = [&]() {
    SwitchConfiguration config = base;
    for (const auto& [branch_id, plan] : active) {
      config.set_sectionalizer(net.elec.branch_index(branch_id), false);
      for (int tie_id : plan.ties_to_close) {
        config.set_tie(net.elec.tie_index(tie_id), true);
      }
    }
    return config;
  };

  for (const StreamEvent& ev : events) {
    const int b = ev.component_id;
    const int b_idx = net.elec.branch_index(b);
    if (ev.fail) {
      const Window window = windows[b_idx][window_cursor[b_idx]++];
      const SwitchConfiguration config = current_config();
      const std::vector<int> energized = energized_branches(net.elec, config, down);
      const bool was_energized =
          std::binary_search(energized.begin(), energized.end(), b);
      if (was_energized) {
        const RestorationPlan* cached = nullptr;
        if (down.empty() && active.empty()) {
          if (!base_plan_ready[b_idx]) {
            base_plans[b_idx] = select_restoration(net.elec, b);
            base_plan_ready[b_idx] = 1;
          }
          cached = &base_plans[b_idx];
        }
        FaultResolution res = resolve_fault(net, config, down, b, ev.time_h,
                                            window.repair_h, cyber, scenario.rto,
                                            rto_stream, fault_seq++, horizon_h,
                                            cached);
        for (InterruptionRecord& rec : res.records) {
          for (int id : rec.branches) {
            LoadPointTally& tally = result.tallies[net.elec.branch_index(id)];
            tally.interruptions += 1;
            tally.outage_hours += rec.duration_h;
          }
          result.records.push_back(std::move(rec));
        }
        active.insert(std::upper_bound(active.begin(), active.end(), b,
                                       [](int id, const auto& entry) {
                                         return id < entry.first;
                                       }),
                      {b, std::move(res.plan)});
      }
      down.insert(std::lower_bound(down.begin(), down.end(), b), b);
    } else {
      down.erase(std::lower_bound(down.begin(), down.end(), b));
      auto it = std::find_if(active.begin(), active.end(),
                             [b](const auto& entry) { return entry.first == b; });
      if (it != active.end()) {
        active.erase(it);
      }
    }
  }

  const auto [failures, down_hours] = merge_outage_intervals(result.records);
  result.system_failures = failures;
  result.system_down_hours = std::min(down_hours, horizon_h);
  return result;
}

std::pair<int, double> merge_outage_intervals(std::span<const InterruptionRecord> records) {
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(records.size());
  for (const InterruptionRecord& rec : records) {
    intervals.emplace_back(rec.start_h, rec.start_h + rec.duration_h);
  }
  std::sort(intervals.begin(), intervals.end());
  int count = 0;
  double total = 0.0;
  double current_start = 0.0;
  double current_end = -1.0;
  for (const auto& [start, end] : intervals) {
    if (count == 0 || start > current_end) {
      if (count > 0) {
        total += current_end - current_start;
      }
      ++count;
      current_start = start;
      current_end = end;
    } else {
      current_end = std::max(current_end, end);
    }
  }
  if (count > 0) {
    total += current_end - current_start;
  }
  return {count, total};
}

std::vector<ReplicationResult> run_simulation(const Scenario& scenario,
                                              unsigned parallelism) {
  scenario.validate();
  const int n = scenario.replications;
  std::vector<ReplicationResult> results(static_cast<std::size_t>(n));
  if (parallelism == 0) {
    parallelism = std::max(1u, std::thread::hardware_concurrency());
  }
  parallelism = std::min<unsigned>(parallelism, static_cast<unsigned>(n));
  if (parallelism <= 1) {
    for (int i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] = run_replication(scenario, i);
    }
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(parallelism);
  for (unsigned w = 0; w < parallelism; ++w) {
    workers.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        results[static_cast<std::size_t>(i)] = run_replication(scenario, i);
      }
    });
  }
  for (auto& worker : workers) {
    worker.join();
  }
  return results;
}

}  // namespace cpds
