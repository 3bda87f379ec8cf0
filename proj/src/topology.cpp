#include "cpds/topology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cpds {

namespace {

bool contains_sorted(std::span<const int> sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

std::string id_str(int id) { return std::to_string(id); }

}  // namespace

SwitchConfiguration::SwitchConfiguration(std::size_t num_branches,
                                         std::size_t num_ties)
    : sect_closed_(num_branches, 1), tie_closed_(num_ties, 0) {}

void ElectricalNetwork::finalize() {
  node_ids_.clear();
  node_index_.clear();
  branch_index_.clear();
  tie_index_.clear();
  edges_.clear();
  node_edges_.clear();
  downstream_.clear();

  if (feeders.empty()) {
    throw std::invalid_argument("network has no feeders");
  }

  num_feeder_nodes_ = static_cast<int>(feeders.size());
  for (int id : feeders) {
    if (!node_index_.emplace(id, static_cast<int>(node_ids_.size())).second) {
      throw std::invalid_argument("duplicate node id " + id_str(id));
    }
    node_ids_.push_back(id);
  }
  for (int id : buses) {
    if (!node_index_.emplace(id, static_cast<int>(node_ids_.size())).second) {
      throw std::invalid_argument("duplicate node id " + id_str(id));
    }
    node_ids_.push_back(id);
  }

  node_edges_.resize(node_ids_.size());
  total_customers_ = 0;

  auto require_node = [&](int id, const std::string& what) {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) {
      throw std::invalid_argument(what + " references unknown node " + id_str(id));
    }
    return it->second;
  };

  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    if (!branch_index_.emplace(b.id, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate branch id " + id_str(b.id));
    }
    if (b.customers < 0) {
      throw std::invalid_argument("branch " + id_str(b.id) +
                                  " has negative customer count");
    }
    if (b.lambda_override && !(*b.lambda_override >= 0.0)) {
      throw std::invalid_argument("branch " + id_str(b.id) +
                                  " has negative failure-rate override");
    }
    Edge e;
    e.a = require_node(b.from, "branch " + id_str(b.id));
    e.b = require_node(b.to, "branch " + id_str(b.id));
    e.is_tie = false;
    e.pos = static_cast<int>(i);
    node_edges_[e.a].push_back(static_cast<int>(edges_.size()));
    node_edges_[e.b].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(e);
    total_customers_ += b.customers;
  }
  for (std::size_t i = 0; i < ties.size(); ++i) {
    const TieSwitch& t = ties[i];
    if (!tie_index_.emplace(t.id, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate tie id " + id_str(t.id));
    }
    Edge e;
    e.a = require_node(t.node_a, "tie " + id_str(t.id));
    e.b = require_node(t.node_b, "tie " + id_str(t.id));
    e.is_tie = true;
    e.pos = static_cast<int>(i);
    node_edges_[e.a].push_back(static_cast<int>(edges_.size()));
    node_edges_[e.b].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(e);
  }

  // Base-configuration orientation: BFS from the feeders over branches only.
  // Every bus must be reached exactly once, each branch traversed from its
  // upstream side, and no cycles may appear.
  std::vector<int> parent_edge(node_ids_.size(), -1);
  std::vector<int> owner(node_ids_.size(), -1);
  std::vector<std::vector<int>> child_branches(branches.size());
  std::deque<int> queue;
  for (int f = 0; f < num_feeder_nodes_; ++f) {
    owner[f] = f;
    queue.push_back(f);
  }
  std::vector<int> bfs_branch_order;
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int ei : node_edges_[n]) {
      const Edge& e = edges_[ei];
      if (e.is_tie) {
        continue;
      }
      const int other = e.a == n ? e.b : e.a;
      if (owner[other] == -1) {
        owner[other] = owner[n];
        parent_edge[other] = ei;
        bfs_branch_order.push_back(e.pos);
        queue.push_back(other);
      } else if (parent_edge[n] != ei) {
        throw std::invalid_argument(
            "base configuration is not radial: cycle or double feed through "
            "branch " + id_str(branches[e.pos].id));
      }
    }
  }
  for (std::size_t n = num_feeder_nodes_; n < node_ids_.size(); ++n) {
    if (owner[n] == -1) {
      throw std::invalid_argument("bus " + id_str(node_ids_[n]) +
                                  " is not reachable from any feeder");
    }
  }

  // Branch orientation must match the declared (from -> to) direction.
  for (const Edge& e : edges_) {
    if (e.is_tie) {
      continue;
    }
    const Branch& b = branches[e.pos];
    if (parent_edge[node_index_.at(b.to)] !=
        static_cast<int>(&e - edges_.data())) {
      throw std::invalid_argument("branch " + id_str(b.id) +
                                  " is not oriented upstream-to-downstream");
    }
  }

  // Downstream sets, accumulated leaf-first over the BFS order.
  downstream_.assign(branches.size(), {});
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const int child_node = node_index_.at(branches[i].to);
    for (int ei : node_edges_[child_node]) {
      const Edge& e = edges_[ei];
      if (e.is_tie || e.pos == static_cast<int>(i)) {
        continue;
      }
      if (node_index_.at(branches[e.pos].from) == child_node) {
        child_branches[i].push_back(e.pos);
      }
    }
  }
  for (auto it = bfs_branch_order.rbegin(); it != bfs_branch_order.rend(); ++it) {
    std::vector<int>& down = downstream_[*it];
    for (int child : child_branches[*it]) {
      down.push_back(branches[child].id);
      down.insert(down.end(), downstream_[child].begin(), downstream_[child].end());
    }
    std::sort(down.begin(), down.end());
  }
}

int ElectricalNetwork::branch_index(int branch_id) const {
  auto it = branch_index_.find(branch_id);
  if (it == branch_index_.end()) {
    throw std::invalid_argument("unknown branch id " + id_str(branch_id));
  }
  return it->second;
}

int ElectricalNetwork::tie_index(int tie_id) const {
  auto it = tie_index_.find(tie_id);
  if (it == tie_index_.end()) {
    throw std::invalid_argument("unknown tie id " + id_str(tie_id));
  }
  return it->second;
}

int ElectricalNetwork::node_index(int node_id) const {
  auto it = node_index_.find(node_id);
  if (it == node_index_.end()) {
    throw std::invalid_argument("unknown node id " + id_str(node_id));
  }
  return it->second;
}

bool ElectricalNetwork::is_feeder_node(int node_id) const {
  return node_index(node_id) < num_feeder_nodes_;
}

const std::vector<int>& ElectricalNetwork::downstream(int branch_id) const {
  return downstream_[branch_index(branch_id)];
}

std::vector<int> downstream_of(const ElectricalNetwork& net, int branch_id) {
  return net.downstream(branch_id);
}

namespace {

bool edge_closed(const ElectricalNetwork::Edge& e,
                 const SwitchConfiguration& config) {
  return e.is_tie ? config.tie_closed(e.pos) : config.sectionalizer_closed(e.pos);
}

}  // namespace

bool is_radial(const ElectricalNetwork& net, const SwitchConfiguration& config) {
  std::vector<int> owner(net.node_ids_.size(), -1);
  std::vector<int> via_edge(net.node_ids_.size(), -1);
  std::deque<int> queue;
  for (int f = 0; f < net.num_feeder_nodes_; ++f) {
    owner[f] = f;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int ei : net.node_edges_[n]) {
      const auto& e = net.edges_[ei];
      if (!edge_closed(e, config)) {
        continue;
      }
      const int other = e.a == n ? e.b : e.a;
      if (owner[other] == -1) {
        owner[other] = owner[n];
        via_edge[other] = ei;
        queue.push_back(other);
      } else if (via_edge[n] != ei) {
        // Reaching an already-energized node again: either a cycle within one
        // feeder's region or a path between two feeders.
        return false;
      }
    }
  }
  return true;
}

std::vector<int> energized_branches(const ElectricalNetwork& net,
                                    const SwitchConfiguration& config,
                                    std::span<const int> failed_branch_ids) {
  std::vector<char> reached(net.node_ids_.size(), 0);
  std::deque<int> queue;
  for (int f = 0; f < net.num_feeder_nodes_; ++f) {
    reached[f] = 1;
    queue.push_back(f);
  }
  auto traversable = [&](const ElectricalNetwork::Edge& e) {
    if (!edge_closed(e, config)) {
      return false;
    }
    return e.is_tie || !contains_sorted(failed_branch_ids, net.branches[e.pos].id);
  };
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int ei : net.node_edges_[n]) {
      const auto& e = net.edges_[ei];
      if (!traversable(e)) {
        continue;
      }
      const int other = e.a == n ? e.b : e.a;
      if (!reached[other]) {
        reached[other] = 1;
        queue.push_back(other);
      }
    }
  }
  std::vector<int> result;
  for (const auto& e : net.edges_) {
    if (e.is_tie || !traversable(e)) {
      continue;
    }
    if (reached[e.a] || reached[e.b]) {
      result.push_back(net.branches[e.pos].id);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// Every bus fed under `config` with no failures.
bool all_buses_energized(const ElectricalNetwork& net,
                         const SwitchConfiguration& config) {
  std::vector<char> reached(net.node_ids_.size(), 0);
  std::deque<int> queue;
  for (int f = 0; f < net.num_feeder_nodes_; ++f) {
    reached[f] = 1;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int ei : net.node_edges_[n]) {
      const auto& e = net.edges_[ei];
      if (!edge_closed(e, config)) {
        continue;
      }
      const int other = e.a == n ? e.b : e.a;
      if (!reached[other]) {
        reached[other] = 1;
        queue.push_back(other);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(),
                     [](char r) { return r != 0; });
}

}  // namespace

int count_feasible_single_exchanges(const ElectricalNetwork& net) {
  int count = 0;
  for (std::size_t s = 0; s < net.branches.size(); ++s) {
    for (std::size_t t = 0; t < net.ties.size(); ++t) {
      SwitchConfiguration config = net.base_configuration();
      config.set_sectionalizer(s, false);
      config.set_tie(t, true);
      if (is_radial(net, config) && all_buses_energized(net, config)) {
        ++count;
      }
    }
  }
  return count;
}

void CyberNetwork::finalize(const ElectricalNetwork& elec) {
  ring_position_.clear();
  controller_by_branch_.clear();
  cyber_adjacency_.clear();
  primary_paths_.clear();

  if (ring.size() < 3) {
    throw std::invalid_argument("communication ring needs at least 3 switches");
  }
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (!ring_position_.emplace(ring[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate communication switch id " +
                                  id_str(ring[i]));
    }
  }
  if (controllers.size() != elec.branches.size()) {
    throw std::invalid_argument("expected one controller per branch");
  }
  for (std::size_t i = 0; i < controllers.size(); ++i) {
    const CommController& c = controllers[i];
    elec.branch_index(c.branch_id);  // controller referencing unknown branch
    if (!ring_position_.count(c.comm_switch_id)) {
      throw std::invalid_argument("controller for branch " + id_str(c.branch_id) +
                                  " attaches to unknown communication switch " +
                                  id_str(c.comm_switch_id));
    }
    if (!controller_by_branch_.emplace(c.branch_id, static_cast<int>(i)).second) {
      throw std::invalid_argument("branch " + id_str(c.branch_id) +
                                  " has more than one controller");
    }
  }
  if (servers.size() != 2) {
    throw std::invalid_argument("expected exactly 2 servers");
  }

  const int m = static_cast<int>(ring.size());
  cyber_adjacency_.resize(ring.size() + servers.size());
  auto link = [&](int a, int b) {
    cyber_adjacency_[a].push_back(b);
    cyber_adjacency_[b].push_back(a);
  };
  for (int i = 0; i < m; ++i) {
    link(i, (i + 1) % m);
  }
  for (std::size_t s = 0; s < servers.size(); ++s) {
    const Server& srv = servers[s];
    const auto pa = ring_position_.find(srv.adjacent_a);
    const auto pb = ring_position_.find(srv.adjacent_b);
    if (pa == ring_position_.end() || pb == ring_position_.end()) {
      throw std::invalid_argument("server " + id_str(srv.id) +
                                  " attaches to unknown communication switch");
    }
    const int d = std::abs(pa->second - pb->second);
    if (d != 1 && d != m - 1) {
      throw std::invalid_argument("server " + id_str(srv.id) +
                                  " must sit between ring-adjacent switches");
    }
    link(m + static_cast<int>(s), pa->second);
    link(m + static_cast<int>(s), pb->second);
  }
  for (auto& adj : cyber_adjacency_) {
    std::sort(adj.begin(), adj.end());
  }

  // Pre-failure active paths: deterministic shortest path from each ring
  // position to each server over the intact graph.
  primary_paths_.assign(ring.size(), {});
  for (int start = 0; start < m; ++start) {
    primary_paths_[start].resize(servers.size());
    std::vector<int> parent(cyber_adjacency_.size(), -2);
    parent[start] = -1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int n = queue.front();
      queue.pop_front();
      for (int other : cyber_adjacency_[n]) {
        if (parent[other] == -2) {
          parent[other] = n;
          queue.push_back(other);
        }
      }
    }
    for (std::size_t s = 0; s < servers.size(); ++s) {
      std::vector<int>& path = primary_paths_[start][s];
      for (int n = m + static_cast<int>(s); n != -1; n = parent[n]) {
        path.push_back(n);
      }
      std::reverse(path.begin(), path.end());
    }
  }
}

int CyberNetwork::ring_position(int comm_switch_id) const {
  auto it = ring_position_.find(comm_switch_id);
  if (it == ring_position_.end()) {
    throw std::invalid_argument("unknown communication switch id " +
                                id_str(comm_switch_id));
  }
  return it->second;
}

const CommController& CyberNetwork::controller_for(int branch_id) const {
  auto it = controller_by_branch_.find(branch_id);
  if (it == controller_by_branch_.end()) {
    throw std::invalid_argument("no controller for branch " + id_str(branch_id));
  }
  return controllers[it->second];
}

CommStatus controller_comm_status(const CyberNetwork& cyber, int branch_id,
                                  std::span<const int> failed_comm_switch_ids,
                                  std::span<const int> failed_controller_branch_ids,
                                  std::span<const int> failed_server_ids) {
  if (contains_sorted(failed_controller_branch_ids, branch_id)) {
    return CommStatus::ControllerDown;
  }
  const CommController& ctrl = cyber.controller_for(branch_id);
  if (contains_sorted(failed_comm_switch_ids, ctrl.comm_switch_id)) {
    return CommStatus::ControllerDown;
  }

  const int m = static_cast<int>(cyber.ring.size());
  auto node_live = [&](int node) {
    if (node < m) {
      return !contains_sorted(failed_comm_switch_ids, cyber.ring[node]);
    }
    return !contains_sorted(failed_server_ids, cyber.servers[node - m].id);
  };

  // The active tree must be whole: a break on the pre-failure path to any
  // live server forces a ring reconfiguration.
  const int start = cyber.ring_position(ctrl.comm_switch_id);
  bool any_live_server = false;
  bool primaries_intact = true;
  for (std::size_t s = 0; s < cyber.servers.size(); ++s) {
    if (!node_live(m + static_cast<int>(s))) {
      continue;
    }
    any_live_server = true;
    const auto& path = cyber.primary_paths_[start][s];
    if (!std::all_of(path.begin(), path.end(), node_live)) {
      primaries_intact = false;
      break;
    }
  }
  if (any_live_server && primaries_intact) {
    return CommStatus::Connected;
  }

  // Reachability of any live server once the ring reroutes around failures.
  std::vector<char> seen(cyber.cyber_adjacency_.size(), 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    if (n >= m) {
      return CommStatus::ConnectedAfterRstp;
    }
    for (int other : cyber.cyber_adjacency_[n]) {
      if (!seen[other] && node_live(other)) {
        seen[other] = 1;
        queue.push_back(other);
      }
    }
  }
  return CommStatus::ControllerDown;
}

Network build_civanlar() {
  Network net;
  net.name = "civanlar";
  net.elec.feeders = {1, 2, 3};
  net.elec.buses = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  net.elec.branches = {
      {3, 1, 4, 3, {}},   {4, 4, 5, 5, {}},   {5, 4, 6, 3, {}},
      {6, 6, 7, 2, {}},   {7, 2, 8, 6, {}},   {8, 8, 9, 8, {}},
      {9, 8, 10, 1, {}},  {10, 9, 11, 1, {}}, {11, 9, 12, 7, {}},
      {12, 3, 13, 1, {}}, {13, 13, 14, 1, {}}, {14, 13, 15, 1, {}},
      {15, 15, 16, 3, {}},
  };
  net.elec.ties = {{1, 5, 11}, {2, 10, 14}, {3, 7, 16}};

  net.cyber.ring = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  for (const Branch& b : net.elec.branches) {
    net.cyber.controllers.push_back({b.id, b.id});
  }
  // Server 1 at the ring's wrap-around boundary, server 2 at the midpoint.
  net.cyber.servers = {{1, 15, 3}, {2, 9, 10}};

  net.finalize();
  return net;
}

}  // namespace cpds
