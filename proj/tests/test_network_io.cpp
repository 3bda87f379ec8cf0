#include "doctest.h"

#include <string>

#include "cpds/network_io.hpp"

using namespace cpds;

namespace {

// Minimal single-feeder, two-branch line with a valid 3-switch ring.
const char* kTwoBranchLine = R"({
  "version": 1,
  "name": "line2",
  "feeders": [1],
  "buses": [2, 3],
  "branches": [
    {"id": 1, "from": 1, "to": 2, "customers": 4},
    {"id": 2, "from": 2, "to": 3, "customers": 6, "lambda_per_year": 0.5}
  ],
  "tie_switches": [],
  "comm_ring": [1, 2, 3],
  "controllers": [
    {"branch": 1, "comm_switch": 1},
    {"branch": 2, "comm_switch": 2}
  ],
  "servers": [
    {"id": 1, "between": [3, 1]},
    {"id": 2, "between": [1, 2]}
  ]
})";

}  // namespace

TEST_CASE("shipped network file round-trips to the built-in system") {
  const Network from_file =
      load_network_file(std::string(CPDS_DATA_DIR) + "/civanlar.json");
  const Network built = build_civanlar();
  CHECK(from_file == built);

  const Network reparsed = load_network(network_to_json(built));
  CHECK(reparsed == built);
}

TEST_CASE("minimal two-branch line loads") {
  const Network net = load_network(kTwoBranchLine);
  CHECK(net.elec.branches.size() == 2);
  CHECK(net.elec.total_customers() == 10);
  CHECK(net.elec.branches[1].lambda_override == 0.5);
  CHECK(net.elec.downstream(1) == std::vector<int>{2});
}

TEST_CASE("cycle in the normally-closed graph is rejected naming a branch") {
  const char* looped = R"({
    "version": 1, "name": "loop",
    "feeders": [1],
    "buses": [2, 3],
    "branches": [
      {"id": 1, "from": 1, "to": 2, "customers": 1},
      {"id": 2, "from": 2, "to": 3, "customers": 1},
      {"id": 9, "from": 3, "to": 2, "customers": 0}
    ],
    "tie_switches": [],
    "comm_ring": [1, 2, 3],
    "controllers": [
      {"branch": 1, "comm_switch": 1},
      {"branch": 2, "comm_switch": 2},
      {"branch": 9, "comm_switch": 3}
    ],
    "servers": [
      {"id": 1, "between": [3, 1]},
      {"id": 2, "between": [1, 2]}
    ]
  })";
  CHECK_THROWS_WITH_AS(load_network(looped), doctest::Contains("not radial"),
                       FileFormatError);
}

TEST_CASE("controller referencing an unknown branch is rejected") {
  std::string text = kTwoBranchLine;
  const auto pos = text.find("{\"branch\": 2");
  std::string broken = text;
  broken.replace(pos, std::string("{\"branch\": 2").size(), "{\"branch\": 77");
  CHECK_THROWS_WITH_AS(load_network(broken), doctest::Contains("77"),
                       FileFormatError);
}

TEST_CASE("unreachable bus is rejected") {
  std::string text = kTwoBranchLine;
  text.replace(text.find("\"buses\": [2, 3]"), std::string("\"buses\": [2, 3]").size(),
               "\"buses\": [2, 3, 4]");
  CHECK_THROWS_WITH_AS(load_network(text), doctest::Contains("4"),
                       FileFormatError);
}

TEST_CASE("schema violations are reported") {
  CHECK_THROWS_AS(load_network("not json"), FileFormatError);
  CHECK_THROWS_AS(load_network("{}"), FileFormatError);
  CHECK_THROWS_AS(load_network(R"({"version": 7})"), FileFormatError);
  std::string text = kTwoBranchLine;
  text.replace(text.find("\"servers\""), std::string("\"servers\"").size(),
               "\"serverz\"");
  CHECK_THROWS_AS(load_network(text), FileFormatError);
}
