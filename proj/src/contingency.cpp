#include "cpds/contingency.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpds {

namespace {

bool contains_sorted(std::span<const int> sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

std::vector<int> sorted_difference(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

int customers_of(const ElectricalNetwork& net, std::span<const int> branch_ids) {
  int total = 0;
  for (int id : branch_ids) {
    total += net.branches[net.branch_index(id)].customers;
  }
  return total;
}

}  // namespace

CyberTimeline::CyberTimeline(const Network& net,
                             std::vector<StateTransitionVector> comm,
                             std::vector<StateTransitionVector> controllers)
    : net_(&net), comm_(std::move(comm)), controllers_(std::move(controllers)) {
  if (comm_.size() != net.cyber.ring.size() ||
      controllers_.size() != net.elec.branches.size()) {
    throw std::invalid_argument("cyber timeline does not match the network");
  }
  horizon_h_ = comm_.empty() ? 0.0 : comm_.front().horizon_h;
  for (const auto& vec : comm_) {
    for (const auto& e : vec.events) {
      change_times_.push_back(e.time_h);
    }
  }
  for (const auto& vec : controllers_) {
    for (const auto& e : vec.events) {
      change_times_.push_back(e.time_h);
    }
  }
  std::sort(change_times_.begin(), change_times_.end());
}

void CyberTimeline::failed_sets(double t, std::vector<int>& comm_ids,
                                std::vector<int>& controller_branches) const {
  comm_ids.clear();
  controller_branches.clear();
  for (const auto& vec : comm_) {
    if (!vec.events.empty() && !state_up_at(vec, t)) {
      comm_ids.push_back(vec.component_id);
    }
  }
  for (const auto& vec : controllers_) {
    if (!vec.events.empty() && !state_up_at(vec, t)) {
      controller_branches.push_back(vec.component_id);
    }
  }
  std::sort(comm_ids.begin(), comm_ids.end());
  std::sort(controller_branches.begin(), controller_branches.end());
}

CommStatus CyberTimeline::status_at(int branch_id, double t) const {
  if (change_times_.empty()) {
    return CommStatus::Connected;
  }
  std::vector<int> comm_ids;
  std::vector<int> controller_branches;
  failed_sets(t, comm_ids, controller_branches);
  return controller_comm_status(net_->cyber, branch_id, comm_ids,
                                controller_branches);
}

double CyberTimeline::detection_delay_h(int branch_id, double t) const {
  switch (status_at(branch_id, t)) {
    case CommStatus::Connected:
      return 0.0;
    case CommStatus::ConnectedAfterRstp:
      return kRstpReconfigHours;
    case CommStatus::ControllerDown:
      break;
  }
  // Blind until the controller is back and some path to a server exists.
  auto it = std::upper_bound(change_times_.begin(), change_times_.end(), t);
  for (; it != change_times_.end(); ++it) {
    if (status_at(branch_id, *it) != CommStatus::ControllerDown) {
      return *it - t;
    }
  }
  return horizon_h_ - t;
}

RestorationPlan select_restoration_in(const ElectricalNetwork& net,
                                      const SwitchConfiguration& current,
                                      std::span<const int> failed_branches,
                                      int faulted_branch) {
  const int faulted_idx = net.branch_index(faulted_branch);
  if (!contains_sorted(failed_branches, faulted_branch)) {
    throw std::invalid_argument("failed set must include the faulted branch");
  }

  std::vector<int> failed_before;
  failed_before.reserve(failed_branches.size());
  for (int id : failed_branches) {
    if (id != faulted_branch) {
      failed_before.push_back(id);
    }
  }

  const std::vector<int> before = energized_branches(net, current, failed_before);
  SwitchConfiguration isolated = current;
  isolated.set_sectionalizer(faulted_idx, false);
  const std::vector<int> after = energized_branches(net, isolated, failed_branches);

  std::vector<int> affected = sorted_difference(before, after);
  affected.erase(std::remove(affected.begin(), affected.end(), faulted_branch),
                 affected.end());

  std::vector<int> open_ties;
  for (std::size_t i = 0; i < net.ties.size(); ++i) {
    if (!current.tie_closed(i)) {
      open_ties.push_back(static_cast<int>(i));
    }
  }
  if (open_ties.size() > 16) {
    throw std::runtime_error("restoration search supports at most 16 open ties");
  }

  RestorationPlan best;
  best.faulted_branch = faulted_branch;
  best.unrestorable = affected;
  std::vector<int> best_tie_ids;  // lexicographic tie-break key
  std::size_t best_count = 0;
  bool have_plan = false;

  for (std::uint32_t mask = 0; mask < (1u << open_ties.size()); ++mask) {
    SwitchConfiguration candidate = isolated;
    std::vector<int> tie_ids;
    for (std::size_t i = 0; i < open_ties.size(); ++i) {
      if (mask & (1u << i)) {
        candidate.set_tie(open_ties[i], true);
        tie_ids.push_back(net.ties[open_ties[i]].id);
      }
    }
    if (!is_radial(net, candidate)) {
      continue;
    }
    const std::vector<int> energized = energized_branches(net, candidate, failed_branches);
    std::vector<int> restored;
    std::set_intersection(affected.begin(), affected.end(), energized.begin(),
                          energized.end(), std::back_inserter(restored));
    std::sort(tie_ids.begin(), tie_ids.end());
    const bool better =
        !have_plan || restored.size() > best_count ||
        (restored.size() == best_count &&
         (tie_ids.size() < best_tie_ids.size() ||
          (tie_ids.size() == best_tie_ids.size() && tie_ids < best_tie_ids)));
    if (better) {
      have_plan = true;
      best_count = restored.size();
      best_tie_ids = tie_ids;
      best.ties_to_close = tie_ids;
      best.restorable = std::move(restored);
      best.unrestorable = sorted_difference(affected, best.restorable);
    }
  }
  return best;
}

RestorationPlan select_restoration(const ElectricalNetwork& net, int faulted_branch) {
  const std::vector<int> failed{faulted_branch};
  return select_restoration_in(net, net.base_configuration(), failed, faulted_branch);
}

FaultResolution resolve_fault(const Network& net, const SwitchConfiguration& current,
                              std::span<const int> failed_before, int faulted_branch,
                              double fault_time_h, double repair_h,
                              const CyberTimeline& cyber, const RtoParameters& rto,
                              RandomStream& rto_stream, int fault_seq,
                              double horizon_h, const RestorationPlan* base_plan) {
  FaultResolution res;
  if (base_plan != nullptr && failed_before.empty() &&
      current == net.elec.base_configuration()) {
    res.plan = *base_plan;
  } else {
    std::vector<int> failed(failed_before.begin(), failed_before.end());
    failed.insert(std::lower_bound(failed.begin(), failed.end(), faulted_branch),
                  faulted_branch);
    res.plan = select_restoration_in(net.elec, current, failed, faulted_branch);
  }

  res.detection_delay_h = cyber.detection_delay_h(faulted_branch, fault_time_h);
  res.rto_h = sample_rto_minutes(rto, rto_stream) / kMinutesPerHour;
  const double wait = res.detection_delay_h + res.rto_h;

  auto add_record = [&](InterruptionCause cause, std::vector<int> branches,
                        double duration) {
    duration = std::min(duration, horizon_h - fault_time_h);
    const int customers = customers_of(net.elec, branches);
    if (duration <= 0.0 || customers <= 0) {
      return;
    }
    res.records.push_back({fault_seq, cause, std::move(branches), customers,
                           fault_time_h, duration});
  };

  add_record(InterruptionCause::FaultedBranch, {faulted_branch}, wait + repair_h);
  add_record(InterruptionCause::RestoredDownstream, res.plan.restorable, wait);
  add_record(InterruptionCause::UnrestorableDownstream, res.plan.unrestorable,
             wait + repair_h);
  return res;
}

}  // namespace cpds
