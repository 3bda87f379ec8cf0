#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpds/runner.hpp"

using namespace cpds;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir{CPDS_DATA_DIR};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cpds_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// A fast sweep over the shipped network for file-level tests.
fs::path small_sweep_scenario(const fs::path& dir) {
  const fs::path path = dir / "scenario.json";
  write_text(path, R"({
    "version": 1,
    "name": "small-sweep",
    "network": "civanlar.json",
    "horizon_years": 50,
    "replications": 4,
    "seed": 4242,
    "component_classes": {
      "branch":      {"lambda_per_year": 0.1,   "repair_mean_h": 3.0, "repair_std_h": 0.6},
      "comm_switch": {"lambda_per_year": 0.005, "repair_mean_h": 3.0, "repair_std_h": 0.6},
      "controller":  {"lambda_per_year": 0.01,  "repair_mean_h": 3.0, "repair_std_h": 0.6}
    },
    "rto_sweep": [[0, 0], [10, 2], [60, 12]]
  })");
  fs::copy_file(kDataDir / "civanlar.json", dir / "civanlar.json");
  return path;
}

}  // namespace

TEST_CASE("shipped files validate cleanly") {
  const RunManifest manifest =
      load_manifest_file(kDataDir / "civanlar_manifest.json");
  CHECK(validate_manifest(manifest).empty());
  const RunManifest toy = load_manifest_file(kDataDir / "toy_manifest.json");
  CHECK(validate_manifest(toy).empty());
}

TEST_CASE("validation diagnoses broken inputs without running") {
  const fs::path dir = fresh_dir("validate");

  SUBCASE("response-time spread without a mean") {
    write_text(dir / "scenario.json", R"({
      "version": 1, "name": "bad", "network": "civanlar.json",
      "horizon_years": 10, "replications": 2,
      "component_classes": {
        "branch":      {"lambda_per_year": 0.1, "repair_mean_h": 3.0, "repair_std_h": 0.6},
        "comm_switch": {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6},
        "controller":  {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6}
      },
      "rto": [0, 1]
    })");
    fs::copy_file(kDataDir / "civanlar.json", dir / "civanlar.json");
    RunManifest manifest;
    manifest.scenario_path = dir / "scenario.json";
    manifest.output_dir = dir / "out";
    const auto diagnostics = validate_manifest(manifest);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].find("response time") != std::string::npos);
  }
  SUBCASE("non-radial network names the offending branch") {
    write_text(dir / "net.json", R"({
      "version": 1, "name": "loop", "feeders": [1], "buses": [2, 3],
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
      "servers": [{"id": 1, "between": [3, 1]}, {"id": 2, "between": [1, 2]}]
    })");
    write_text(dir / "scenario.json", R"({
      "version": 1, "name": "bad", "network": "net.json",
      "horizon_years": 10, "replications": 2,
      "component_classes": {
        "branch":      {"lambda_per_year": 0.1, "repair_mean_h": 3.0, "repair_std_h": 0.6},
        "comm_switch": {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6},
        "controller":  {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6}
      },
      "rto": [0, 0]
    })");
    RunManifest manifest;
    manifest.scenario_path = dir / "scenario.json";
    manifest.output_dir = dir / "out";
    const auto diagnostics = validate_manifest(manifest);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].find("not radial") != std::string::npos);
  }
  SUBCASE("unreadable scenario") {
    RunManifest manifest;
    manifest.scenario_path = dir / "missing.json";
    manifest.output_dir = dir / "out";
    CHECK(validate_manifest(manifest).size() == 1);
  }
}

TEST_CASE("runs write the documented tables deterministically") {
  const fs::path dir = fresh_dir("run");
  const fs::path scenario = small_sweep_scenario(dir);

  RunManifest manifest;
  manifest.scenario_path = scenario;
  manifest.output_dir = dir / "out_a";
  manifest.parallelism = 2;
  manifest.emit_samples = true;
  manifest.emit_timelines = true;

  std::ostringstream log;
  REQUIRE(run(manifest, log) == 0);

  SUBCASE("pinned column headers") {
    const std::string summary = read_file(dir / "out_a" / "summary.csv");
    CHECK(summary.rfind("scenario,mu_rto_min,sigma_rto_min,failure_rate,"
                        "availability_nines,saidi,saifi,failure_rate_std,"
                        "availability_nines_std,saidi_std,saifi_std\n",
                        0) == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);  // header + 3 rows
    const std::string pct = read_file(dir / "out_a" / "percent_diff.csv");
    CHECK(pct.rfind("mu_rto_min,availability_nines,availability_nines_pct_vs_mu0,"
                    "saidi,saidi_pct_vs_mu0\n",
                    0) == 0);
    const std::string figure = read_file(dir / "out_a" / "figure_data.csv");
    CHECK(figure.rfind("mu_rto_min,availability_nines_pct_vs_mu0,saidi_pct_vs_mu0\n",
                       0) == 0);
    const std::string samples = read_file(dir / "out_a" / "samples.csv");
    CHECK(std::count(samples.begin(), samples.end(), '\n') == 1 + 3 * 4);
    CHECK(read_file(dir / "out_a" / "timelines_rep0.csv")
              .rfind("component_kind,component_id,time_h,state\n", 0) == 0);
  }
  SUBCASE("rerun and serial execution are byte-identical") {
    RunManifest again = manifest;
    again.output_dir = dir / "out_b";
    again.parallelism = 1;
    std::ostringstream log_b;
    REQUIRE(run(again, log_b) == 0);
    for (const char* name :
         {"summary.csv", "percent_diff.csv", "figure_data.csv", "samples.csv",
          "timelines_rep0.csv"}) {
      CHECK(read_file(dir / "out_a" / name) == read_file(dir / "out_b" / name));
    }
  }
  SUBCASE("seed override changes results") {
    RunManifest reseeded = manifest;
    reseeded.output_dir = dir / "out_c";
    reseeded.seed = 777;
    std::ostringstream log_c;
    REQUIRE(run(reseeded, log_c) == 0);
    CHECK(read_file(dir / "out_a" / "summary.csv") !=
          read_file(dir / "out_c" / "summary.csv"));
  }
}

TEST_CASE("single-point scenarios produce no percent tables") {
  const fs::path dir = fresh_dir("single");
  write_text(dir / "scenario.json", R"({
    "version": 1, "name": "single", "network": "civanlar.json",
    "horizon_years": 20, "replications": 2,
    "component_classes": {
      "branch":      {"lambda_per_year": 0.1, "repair_mean_h": 3.0, "repair_std_h": 0.6},
      "comm_switch": {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6},
      "controller":  {"lambda_per_year": 0.0, "repair_mean_h": 3.0, "repair_std_h": 0.6}
    },
    "rto": [0, 0]
  })");
  fs::copy_file(kDataDir / "civanlar.json", dir / "civanlar.json");
  RunManifest manifest;
  manifest.scenario_path = dir / "scenario.json";
  manifest.output_dir = dir / "out";
  std::ostringstream log;
  REQUIRE(run(manifest, log) == 0);
  CHECK(fs::exists(dir / "out" / "summary.csv"));
  CHECK(!fs::exists(dir / "out" / "percent_diff.csv"));
  CHECK(!fs::exists(dir / "out" / "figure_data.csv"));
  CHECK(!fs::exists(dir / "out" / "samples.csv"));
}

TEST_CASE("run reports invalid input with a nonzero status") {
  RunManifest manifest;
  manifest.scenario_path = "/nonexistent/scenario.json";
  manifest.output_dir = fresh_dir("invalid") / "out";
  std::ostringstream log;
  CHECK(run(manifest, log) == 1);
  CHECK(log.str().find("error") != std::string::npos);
}
