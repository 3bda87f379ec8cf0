#pragma once

#include <span>
#include <vector>

#include "cpds/timeline.hpp"
#include "cpds/topology.hpp"

namespace cpds {

enum class InterruptionCause { FaultedBranch, RestoredDownstream, UnrestorableDownstream };

// One customer-group outage. Zero-duration or zero-customer groups are never
// recorded.
struct InterruptionRecord {
  int fault_seq = 0;
  InterruptionCause cause = InterruptionCause::FaultedBranch;
  std::vector<int> branches;  // sorted branch ids
  int customers = 0;
  double start_h = 0.0;
  double duration_h = 0.0;

  bool operator==(const InterruptionRecord&) const = default;
};

// Switching answer to one fault: isolate the faulted branch, close the ties
// that re-energize the largest share of the de-energized branches.
struct RestorationPlan {
  int faulted_branch = 0;
  std::vector<int> ties_to_close;    // sorted tie ids
  std::vector<int> restorable;       // sorted branch ids
  std::vector<int> unrestorable;     // sorted branch ids
};

struct FaultResolution {
  RestorationPlan plan;
  double detection_delay_h = 0.0;
  double rto_h = 0.0;
  std::vector<InterruptionRecord> records;
};

// Per-replication view of the communication layer's synthetic history.
class CyberTimeline {
 public:
  CyberTimeline(const Network& net, std::vector<StateTransitionVector> comm,
                std::vector<StateTransitionVector> controllers);

  CommStatus status_at(int branch_id, double t) const;

  // 0 when connected, the ring reconfiguration time when an alternate path
  // has to take over, and otherwise the wait until the controller is repaired
  // and a path to a live server exists again (clipped at the horizon).
  double detection_delay_h(int branch_id, double t) const;

  const std::vector<StateTransitionVector>& comm_vectors() const { return comm_; }
  const std::vector<StateTransitionVector>& controller_vectors() const {
    return controllers_;
  }

 private:
  const Network* net_;
  std::vector<StateTransitionVector> comm_;         // ring order
  std::vector<StateTransitionVector> controllers_;  // branch order
  std::vector<double> change_times_;                // all cyber events, sorted
  double horizon_h_ = 0.0;

  void failed_sets(double t, std::vector<int>& comm_ids,
                   std::vector<int>& controller_branches) const;
};

// Restoration skeleton against the base configuration: opens the faulted
// branch's sectionalizer and closes the minimal tie set re-energizing the
// most downstream branches while staying radial. Equal-coverage plans break
// ties toward the lexicographically smallest tie-id set.
RestorationPlan select_restoration(const ElectricalNetwork& net, int faulted_branch);

// Same contract evaluated against an arbitrary current configuration with
// already-failed branches; `failed_branches` is sorted and includes the
// faulted branch.
RestorationPlan select_restoration_in(const ElectricalNetwork& net,
                                      const SwitchConfiguration& current,
                                      std::span<const int> failed_branches,
                                      int faulted_branch);

// Resolves one fault on an energized branch into interruption records.
// `failed_before` (sorted) holds branches already down at the fault instant,
// excluding the faulted one. One response-time draw is taken per fault.
// `base_plan` short-circuits restoration when the system is in its base state.
FaultResolution resolve_fault(const Network& net, const SwitchConfiguration& current,
                              std::span<const int> failed_before, int faulted_branch,
                              double fault_time_h, double repair_h,
                              const CyberTimeline& cyber, const RtoParameters& rto,
                              RandomStream& rto_stream, int fault_seq,
                              double horizon_h,
                              const RestorationPlan* base_plan = nullptr);

}  // namespace cpds
