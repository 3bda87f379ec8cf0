#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "cpds/engine.hpp"
#include "cpds/network_io.hpp"

namespace cpds {

inline constexpr int kScenarioFormatVersion = 1;
inline constexpr std::uint64_t kDefaultRootSeed = 123456789ULL;

// Parsed scenario document (see docs/file-formats.md). The network path is
// resolved relative to the scenario file's directory.
struct ScenarioFile {
  std::string name;
  std::filesystem::path network_path;
  double horizon_years = 0.0;
  int replications = 0;
  std::uint64_t seed = kDefaultRootSeed;
  ComponentReliability branch_class;
  ComponentReliability comm_switch_class;
  ComponentReliability controller_class;
  // Either a single operating point or a sweep; never both.
  std::vector<RtoParameters> rto_points;
};

ScenarioFile load_scenario_file(const std::filesystem::path& path);

// One engine scenario per response-time point, sharing the network and seed.
std::vector<Scenario> make_scenarios(const ScenarioFile& file,
                                     std::shared_ptr<const Network> network,
                                     std::optional<std::uint64_t> seed_override,
                                     const std::optional<std::vector<RtoParameters>>&
                                         sweep_override);

}  // namespace cpds
