#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cpds/contingency.hpp"
#include "cpds/topology.hpp"

namespace cpds {

// One simulation case: a network, per-class reliability data, operator
// response time, horizon and replication count.
struct Scenario {
  std::shared_ptr<const Network> network;
  ComponentReliability branch_class;
  ComponentReliability comm_switch_class;
  ComponentReliability controller_class;
  RtoParameters rto;
  double horizon_years = 0.0;
  int replications = 0;
  std::uint64_t root_seed = 0;
  std::string name;

  void validate() const;
  ComponentReliability branch_reliability(const Branch& branch) const;
};

struct LoadPointTally {
  int branch_id = 0;
  int customers = 0;
  int interruptions = 0;
  double outage_hours = 0.0;

  bool operator==(const LoadPointTally&) const = default;
};

struct ReplicationResult {
  int replication = 0;
  std::vector<InterruptionRecord> records;
  int system_failures = 0;        // merged outage intervals
  double system_down_hours = 0.0;
  std::vector<LoadPointTally> tallies;  // net branch order

  bool operator==(const ReplicationResult&) const = default;
};

ReplicationResult run_replication(const Scenario& scenario, int replication);

// N independent replications; results are identical for any parallelism
// degree (0 picks the hardware concurrency).
std::vector<ReplicationResult> run_simulation(const Scenario& scenario,
                                              unsigned parallelism = 1);

// Merged union of record outage intervals: (occurrence count, total hours).
std::pair<int, double> merge_outage_intervals(std::span<const InterruptionRecord> records);

}  // namespace cpds
