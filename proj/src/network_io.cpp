#include "cpds/network_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cpds {

namespace {

using nlohmann::json;

json parse(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw FileFormatError(what + ": not valid JSON");
  }
  return doc;
}

void check_version(const json& doc, int expected, const std::string& what) {
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer()) {
    throw FileFormatError(what + ": missing integer \"version\"");
  }
  if (doc["version"].get<int>() != expected) {
    throw FileFormatError(what + ": unsupported version " +
                          doc["version"].dump());
  }
}

int require_int(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw FileFormatError(what + ": missing integer \"" + key + "\"");
  }
  return obj[key].get<int>();
}

}  // namespace

Network load_network(const std::string& json_text) {
  const json doc = parse(json_text, "network file");
  check_version(doc, kNetworkFormatVersion, "network file");

  Network net;
  net.name = doc.value("name", std::string{});

  for (const char* key : {"feeders", "buses", "branches", "tie_switches",
                          "comm_ring", "controllers", "servers"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw FileFormatError(std::string("network file: missing array \"") + key +
                            "\"");
    }
  }

  for (const json& f : doc["feeders"]) {
    net.elec.feeders.push_back(f.get<int>());
  }
  for (const json& b : doc["buses"]) {
    net.elec.buses.push_back(b.get<int>());
  }
  for (const json& b : doc["branches"]) {
    Branch branch;
    branch.id = require_int(b, "id", "branch");
    branch.from = require_int(b, "from", "branch " + std::to_string(branch.id));
    branch.to = require_int(b, "to", "branch " + std::to_string(branch.id));
    branch.customers =
        require_int(b, "customers", "branch " + std::to_string(branch.id));
    if (b.contains("lambda_per_year")) {
      branch.lambda_override = b["lambda_per_year"].get<double>();
    }
    net.elec.branches.push_back(branch);
  }
  for (const json& t : doc["tie_switches"]) {
    TieSwitch tie;
    tie.id = require_int(t, "id", "tie");
    tie.node_a = require_int(t, "a", "tie " + std::to_string(tie.id));
    tie.node_b = require_int(t, "b", "tie " + std::to_string(tie.id));
    net.elec.ties.push_back(tie);
  }
  for (const json& c : doc["comm_ring"]) {
    net.cyber.ring.push_back(c.get<int>());
  }
  for (const json& c : doc["controllers"]) {
    CommController ctrl;
    ctrl.branch_id = require_int(c, "branch", "controller");
    ctrl.comm_switch_id =
        require_int(c, "comm_switch",
                    "controller for branch " + std::to_string(ctrl.branch_id));
    net.cyber.controllers.push_back(ctrl);
  }
  for (const json& s : doc["servers"]) {
    Server server;
    server.id = require_int(s, "id", "server");
    if (!s.contains("between") || !s["between"].is_array() ||
        s["between"].size() != 2) {
      throw FileFormatError("server " + std::to_string(server.id) +
                            ": \"between\" must list two adjacent switches");
    }
    server.adjacent_a = s["between"][0].get<int>();
    server.adjacent_b = s["between"][1].get<int>();
    net.cyber.servers.push_back(server);
  }

  try {
    net.finalize();
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("network file: ") + e.what());
  }
  return net;
}

Network load_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileFormatError("cannot read network file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_network(buffer.str());
}

std::string network_to_json(const Network& net) {
  json doc;
  doc["version"] = kNetworkFormatVersion;
  doc["name"] = net.name;
  doc["feeders"] = net.elec.feeders;
  doc["buses"] = net.elec.buses;
  doc["branches"] = json::array();
  for (const Branch& b : net.elec.branches) {
    json item{{"id", b.id}, {"from", b.from}, {"to", b.to},
              {"customers", b.customers}};
    if (b.lambda_override) {
      item["lambda_per_year"] = *b.lambda_override;
    }
    doc["branches"].push_back(item);
  }
  doc["tie_switches"] = json::array();
  for (const TieSwitch& t : net.elec.ties) {
    doc["tie_switches"].push_back({{"id", t.id}, {"a", t.node_a}, {"b", t.node_b}});
  }
  doc["comm_ring"] = net.cyber.ring;
  doc["controllers"] = json::array();
  for (const CommController& c : net.cyber.controllers) {
    doc["controllers"].push_back(
        {{"branch", c.branch_id}, {"comm_switch", c.comm_switch_id}});
  }
  doc["servers"] = json::array();
  for (const Server& s : net.cyber.servers) {
    doc["servers"].push_back(
        {{"id", s.id}, {"between", json::array({s.adjacent_a, s.adjacent_b})}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace cpds
