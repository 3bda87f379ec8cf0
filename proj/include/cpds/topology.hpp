#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cpds {

// One feeder segment. Endpoints are (from = upstream, to = downstream) in the
// base configuration; each branch carries its own sectionalizing switch.
struct Branch {
  int id = 0;
  int from = 0;
  int to = 0;
  int customers = 0;
  std::optional<double> lambda_override;

  bool operator==(const Branch&) const = default;
};

// Normally-open switch bridging two buses.
struct TieSwitch {
  int id = 0;
  int node_a = 0;
  int node_b = 0;

  bool operator==(const TieSwitch&) const = default;
};

// Open/closed state for every sectionalizing and tie switch, indexed by the
// network's branch/tie array positions.
class SwitchConfiguration {
 public:
  SwitchConfiguration() = default;
  SwitchConfiguration(std::size_t num_branches, std::size_t num_ties);

  bool sectionalizer_closed(std::size_t branch_idx) const {
    return sect_closed_[branch_idx] != 0;
  }
  void set_sectionalizer(std::size_t branch_idx, bool closed) {
    sect_closed_[branch_idx] = closed ? 1 : 0;
  }
  bool tie_closed(std::size_t tie_idx) const { return tie_closed_[tie_idx] != 0; }
  void set_tie(std::size_t tie_idx, bool closed) {
    tie_closed_[tie_idx] = closed ? 1 : 0;
  }

  std::size_t num_branches() const { return sect_closed_.size(); }
  std::size_t num_ties() const { return tie_closed_.size(); }

  bool operator==(const SwitchConfiguration&) const = default;

 private:
  std::vector<std::uint8_t> sect_closed_;
  std::vector<std::uint8_t> tie_closed_;
};

// Radial electrical layer: feeders (sources), buses (load nodes), switched
// branches and normally-open ties. finalize() validates the base
// configuration (spanning forest, one feeder per bus) and builds the derived
// structure used by the graph queries.
struct ElectricalNetwork {
  std::vector<int> feeders;
  std::vector<int> buses;
  std::vector<Branch> branches;
  std::vector<TieSwitch> ties;

  void finalize();

  int branch_index(int branch_id) const;
  int tie_index(int tie_id) const;
  int node_index(int node_id) const;
  bool is_feeder_node(int node_id) const;
  int total_customers() const { return total_customers_; }

  // Branches whose only base-configuration path to a feeder runs through
  // `branch_id` (excluding the branch itself). Sorted by id.
  const std::vector<int>& downstream(int branch_id) const;

  SwitchConfiguration base_configuration() const {
    return SwitchConfiguration(branches.size(), ties.size());
  }

  bool operator==(const ElectricalNetwork& other) const {
    return feeders == other.feeders && buses == other.buses &&
           branches == other.branches && ties == other.ties;
  }

  // Derived (filled by finalize()).
  struct Edge {
    int a = 0;  // dense node indices
    int b = 0;
    bool is_tie = false;
    int pos = 0;  // index into branches or ties
  };
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> node_edges_;  // dense node -> edge indices
  std::vector<int> node_ids_;                 // dense node -> id
  std::unordered_map<int, int> node_index_;
  std::unordered_map<int, int> branch_index_;
  std::unordered_map<int, int> tie_index_;
  std::vector<std::vector<int>> downstream_;  // by branch position
  int num_feeder_nodes_ = 0;                  // dense indices [0, n) are feeders
  int total_customers_ = 0;
};

// true iff the energized subgraph (closed switches only) has no cycle and no
// bus is fed from two feeders.
bool is_radial(const ElectricalNetwork& net, const SwitchConfiguration& config);

// Non-failed branches connected to some feeder through closed, non-failed
// branches and closed ties. `failed_branch_ids` must be sorted. Sorted result.
std::vector<int> energized_branches(const ElectricalNetwork& net,
                                    const SwitchConfiguration& config,
                                    std::span<const int> failed_branch_ids);

std::vector<int> downstream_of(const ElectricalNetwork& net, int branch_id);

// Number of (open one sectionalizer, close one tie) exchanges that stay
// radial and leave every branch energized.
int count_feasible_single_exchanges(const ElectricalNetwork& net);

// Branch monitoring/actuation controller and its ring attachment point.
struct CommController {
  int branch_id = 0;
  int comm_switch_id = 0;

  bool operator==(const CommController&) const = default;
};

// Operation-center server, attached to the ring between two adjacent
// communication switches (dual-homed).
struct Server {
  int id = 0;
  int adjacent_a = 0;
  int adjacent_b = 0;

  bool operator==(const Server&) const = default;
};

enum class CommStatus { Connected, ConnectedAfterRstp, ControllerDown };

// Communication layer: switches in a single ring, one controller per branch,
// servers dual-homed on the ring.
struct CyberNetwork {
  std::vector<int> ring;  // comm switch ids in ring order (size >= 3)
  std::vector<CommController> controllers;
  std::vector<Server> servers;

  void finalize(const ElectricalNetwork& elec);

  int ring_position(int comm_switch_id) const;
  const CommController& controller_for(int branch_id) const;

  bool operator==(const CyberNetwork& other) const {
    return ring == other.ring && controllers == other.controllers &&
           servers == other.servers;
  }

  // Derived (filled by finalize()). Cyber graph nodes: ring positions
  // [0, ring.size()), then servers.
  std::vector<std::vector<int>> cyber_adjacency_;
  std::vector<std::vector<std::vector<int>>> primary_paths_;  // [ring pos][server] -> node path
  std::unordered_map<int, int> ring_position_;
  std::unordered_map<int, int> controller_by_branch_;
};

// Communication status of a branch's controller given the failed component
// sets (all sorted id spans). Connected: some live server is reachable over
// its pre-failure primary path. ConnectedAfterRstp: reachable only after the
// ring reroutes around failed switches. ControllerDown: the controller is
// failed, its attachment switch is failed, or no live server is reachable.
CommStatus controller_comm_status(const CyberNetwork& cyber, int branch_id,
                                  std::span<const int> failed_comm_switch_ids,
                                  std::span<const int> failed_controller_branch_ids,
                                  std::span<const int> failed_server_ids = {});

struct Network {
  std::string name;
  ElectricalNetwork elec;
  CyberNetwork cyber;

  void finalize() {
    elec.finalize();
    cyber.finalize(elec);
  }

  bool operator==(const Network& other) const {
    return name == other.name && elec == other.elec && cyber == other.cyber;
  }
};

// The classic three-feeder reconfiguration test system (13 switched branches,
// 3 ties) with a 13-switch communication ring, one controller per branch and
// two ring-attached servers.
Network build_civanlar();

}  // namespace cpds
