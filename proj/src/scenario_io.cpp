#include "cpds/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cpds {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw FileFormatError(what + ": missing number \"" + key + "\"");
  }
  return obj[key].get<double>();
}

ComponentReliability read_class(const json& classes, const char* key) {
  if (!classes.contains(key) || !classes[key].is_object()) {
    throw FileFormatError(std::string("scenario file: missing component class \"") +
                          key + "\"");
  }
  const json& c = classes[key];
  ComponentReliability rel;
  rel.lambda_per_year = require_number(c, "lambda_per_year", key);
  rel.repair_mean_h = require_number(c, "repair_mean_h", key);
  rel.repair_std_h = require_number(c, "repair_std_h", key);
  return rel;
}

RtoParameters read_rto(const json& value, const std::string& what) {
  RtoParameters rto;
  if (value.is_array() && value.size() == 2 && value[0].is_number() &&
      value[1].is_number()) {
    rto.mu_min = value[0].get<double>();
    rto.sigma_min = value[1].get<double>();
    return rto;
  }
  if (value.is_object()) {
    rto.mu_min = require_number(value, "mu_min", what);
    rto.sigma_min = require_number(value, "sigma_min", what);
    return rto;
  }
  throw FileFormatError(what + ": expected [mu_min, sigma_min] or an object");
}

}  // namespace

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileFormatError("cannot read scenario file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) {
    throw FileFormatError("scenario file: not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kScenarioFormatVersion) {
    throw FileFormatError("scenario file: missing or unsupported \"version\"");
  }

  ScenarioFile file;
  file.name = doc.value("name", path.stem().string());
  if (!doc.contains("network") || !doc["network"].is_string()) {
    throw FileFormatError("scenario file: missing string \"network\"");
  }
  file.network_path = path.parent_path() / doc["network"].get<std::string>();
  file.horizon_years = require_number(doc, "horizon_years", "scenario file");
  if (!doc.contains("replications") || !doc["replications"].is_number_integer()) {
    throw FileFormatError("scenario file: missing integer \"replications\"");
  }
  file.replications = doc["replications"].get<int>();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw FileFormatError("scenario file: \"seed\" must be an integer");
    }
    file.seed = doc["seed"].get<std::uint64_t>();
  }
  if (!doc.contains("component_classes") || !doc["component_classes"].is_object()) {
    throw FileFormatError("scenario file: missing object \"component_classes\"");
  }
  const json& classes = doc["component_classes"];
  file.branch_class = read_class(classes, "branch");
  file.comm_switch_class = read_class(classes, "comm_switch");
  file.controller_class = read_class(classes, "controller");

  const bool has_single = doc.contains("rto");
  const bool has_sweep = doc.contains("rto_sweep");
  if (has_single == has_sweep) {
    throw FileFormatError(
        "scenario file: exactly one of \"rto\" or \"rto_sweep\" is required");
  }
  if (has_single) {
    file.rto_points.push_back(read_rto(doc["rto"], "rto"));
  } else {
    if (!doc["rto_sweep"].is_array() || doc["rto_sweep"].empty()) {
      throw FileFormatError("scenario file: \"rto_sweep\" must be a nonempty array");
    }
    for (const json& point : doc["rto_sweep"]) {
      file.rto_points.push_back(read_rto(point, "rto_sweep entry"));
    }
  }
  return file;
}

std::vector<Scenario> make_scenarios(
    const ScenarioFile& file, std::shared_ptr<const Network> network,
    std::optional<std::uint64_t> seed_override,
    const std::optional<std::vector<RtoParameters>>& sweep_override) {
  const std::vector<RtoParameters>& points =
      sweep_override ? *sweep_override : file.rto_points;
  std::vector<Scenario> scenarios;
  scenarios.reserve(points.size());
  for (const RtoParameters& rto : points) {
    Scenario sc;
    sc.network = network;
    sc.branch_class = file.branch_class;
    sc.comm_switch_class = file.comm_switch_class;
    sc.controller_class = file.controller_class;
    sc.rto = rto;
    sc.horizon_years = file.horizon_years;
    sc.replications = file.replications;
    sc.root_seed = seed_override.value_or(file.seed);
    sc.name = file.name;
    scenarios.push_back(std::move(sc));
  }
  return scenarios;
}

}  // namespace cpds
