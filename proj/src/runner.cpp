#include "cpds/runner.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "cpds/indices.hpp"

namespace cpds {

namespace {

using nlohmann::json;

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

// Indices per replication for one scenario, computed in parallel with
// replication-indexed slots so results do not depend on scheduling.
std::vector<ReliabilityIndices> simulate_indices(const Scenario& scenario,
                                                 unsigned parallelism) {
  const int n = scenario.replications;
  std::vector<ReliabilityIndices> indices(static_cast<std::size_t>(n));
  auto worker_body = [&](int i) {
    const ReplicationResult result = run_replication(scenario, i);
    indices[static_cast<std::size_t>(i)] =
        compute_indices(result, scenario.network->elec, scenario.horizon_years);
  };
  if (parallelism == 0) {
    parallelism = std::max(1u, std::thread::hardware_concurrency());
  }
  parallelism = std::min<unsigned>(parallelism, static_cast<unsigned>(n));
  if (parallelism <= 1) {
    for (int i = 0; i < n; ++i) {
      worker_body(i);
    }
    return indices;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(parallelism);
  for (unsigned w = 0; w < parallelism; ++w) {
    workers.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        worker_body(i);
      }
    });
  }
  for (auto& worker : workers) {
    worker.join();
  }
  return indices;
}

struct ScenarioRow {
  RtoParameters rto;
  IndexDistribution dist;
  std::vector<ReliabilityIndices> samples;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

std::string timeline_csv(const Scenario& scenario) {
  // Replication 0 chronology of every component; identical across the sweep
  // because the substream keys do not involve the response time.
  std::string csv = "component_kind,component_id,time_h,state\n";
  const Network& net = *scenario.network;
  const double horizon_h = scenario.horizon_years * kHoursPerYear;
  auto append = [&](ComponentKind kind, int id, const ComponentReliability& rel,
                    const char* kind_name) {
    RandomStream stream =
        RandomStream::substream(scenario.root_seed, 0, component_key(kind, id));
    const StateTransitionVector vec =
        generate_transition_vector(kind, id, rel, horizon_h, stream);
    csv += std::string(kind_name) + "," + std::to_string(id) + ",0,up\n";
    for (const TransitionEvent& e : vec.events) {
      csv += std::string(kind_name) + "," + std::to_string(id) + "," +
             fmt(e.time_h) + "," + (e.up ? "up" : "down") + "\n";
    }
  };
  for (const Branch& b : net.elec.branches) {
    append(ComponentKind::Branch, b.id, scenario.branch_reliability(b), "branch");
  }
  for (int id : net.cyber.ring) {
    append(ComponentKind::CommSwitch, id, scenario.comm_switch_class,
           "comm_switch");
  }
  for (const Branch& b : net.elec.branches) {
    append(ComponentKind::Controller, b.id, scenario.controller_class,
           "controller");
  }
  return csv;
}

}  // namespace

RunManifest load_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileFormatError("cannot read manifest " + path.string());
  }
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw FileFormatError("manifest: not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kManifestFormatVersion) {
    throw FileFormatError("manifest: missing or unsupported \"version\"");
  }
  RunManifest manifest;
  if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
    throw FileFormatError("manifest: missing string \"scenario\"");
  }
  manifest.scenario_path = path.parent_path() / doc["scenario"].get<std::string>();
  if (!doc.contains("output_dir") || !doc["output_dir"].is_string()) {
    throw FileFormatError("manifest: missing string \"output_dir\"");
  }
  manifest.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("seed")) {
    manifest.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("sweep")) {
    if (!doc["sweep"].is_array()) {
      throw FileFormatError("manifest: \"sweep\" must be an array");
    }
    std::vector<RtoParameters> sweep;
    for (const json& point : doc["sweep"]) {
      if (!point.is_array() || point.size() != 2 || !point[0].is_number() ||
          !point[1].is_number()) {
        throw FileFormatError("manifest: sweep entries must be [mu_min, sigma_min]");
      }
      sweep.push_back({point[0].get<double>(), point[1].get<double>()});
    }
    manifest.sweep = std::move(sweep);
  }
  if (doc.contains("parallelism")) {
    manifest.parallelism = doc["parallelism"].get<unsigned>();
  }
  manifest.emit_samples = doc.value("emit_samples", false);
  manifest.emit_timelines = doc.value("emit_timelines", false);
  return manifest;
}

std::vector<std::string> validate_manifest(const RunManifest& manifest) {
  std::vector<std::string> diagnostics;
  ScenarioFile file;
  bool have_scenario = false;
  try {
    file = load_scenario_file(manifest.scenario_path);
    have_scenario = true;
  } catch (const std::exception& e) {
    diagnostics.emplace_back(e.what());
  }
  std::shared_ptr<Network> network;
  if (have_scenario) {
    try {
      network = std::make_shared<Network>(load_network_file(file.network_path));
    } catch (const std::exception& e) {
      diagnostics.emplace_back(e.what());
    }
  }
  if (have_scenario && network) {
    const auto scenarios =
        make_scenarios(file, network, manifest.seed, manifest.sweep);
    for (const Scenario& sc : scenarios) {
      try {
        sc.validate();
      } catch (const std::exception& e) {
        diagnostics.push_back("rto (" + fmt(sc.rto.mu_min) + ", " +
                              fmt(sc.rto.sigma_min) + "): " + e.what());
      }
    }
  }
  return diagnostics;
}

int run(const RunManifest& manifest, std::ostream& log) {
  const std::vector<std::string> diagnostics = validate_manifest(manifest);
  if (!diagnostics.empty()) {
    for (const std::string& d : diagnostics) {
      log << "error: " << d << "\n";
    }
    return 1;
  }

  try {
    const ScenarioFile file = load_scenario_file(manifest.scenario_path);
    const auto network =
        std::make_shared<const Network>(load_network_file(file.network_path));
    const std::vector<Scenario> scenarios =
        make_scenarios(file, network, manifest.seed, manifest.sweep);

    std::vector<ScenarioRow> rows;
    rows.reserve(scenarios.size());
    for (const Scenario& sc : scenarios) {
      log << file.name << " rto mu=" << fmt(sc.rto.mu_min)
          << " min: " << sc.replications << " replications x "
          << fmt(sc.horizon_years) << " years\n";
      ScenarioRow row;
      row.rto = sc.rto;
      row.samples = simulate_indices(sc, manifest.parallelism);
      row.dist = aggregate(row.samples);
      rows.push_back(std::move(row));
    }

    std::filesystem::create_directories(manifest.output_dir);

    std::string summary =
        "scenario,mu_rto_min,sigma_rto_min,failure_rate,availability_nines,"
        "saidi,saifi,failure_rate_std,availability_nines_std,saidi_std,"
        "saifi_std\n";
    for (const ScenarioRow& row : rows) {
      summary += file.name + "," + fmt(row.rto.mu_min) + "," +
                 fmt(row.rto.sigma_min) + "," + fmt(row.dist.failure_rate.mean) +
                 "," + fmt(row.dist.nines.mean) + "," + fmt(row.dist.saidi.mean) +
                 "," + fmt(row.dist.saifi.mean) + "," +
                 fmt(row.dist.failure_rate.stddev) + "," +
                 fmt(row.dist.nines.stddev) + "," + fmt(row.dist.saidi.stddev) +
                 "," + fmt(row.dist.saifi.stddev) + "\n";
    }
    write_file(manifest.output_dir / "summary.csv", summary);

    const bool swept = rows.size() > 1;
    const ScenarioRow* baseline = nullptr;
    for (const ScenarioRow& row : rows) {
      if (row.rto.mu_min == 0.0) {
        baseline = &row;
        break;
      }
    }
    if (swept && baseline != nullptr) {
      std::string pct =
          "mu_rto_min,availability_nines,availability_nines_pct_vs_mu0,saidi,"
          "saidi_pct_vs_mu0\n";
      std::string figure = "mu_rto_min,availability_nines_pct_vs_mu0,saidi_pct_vs_mu0\n";
      const ReliabilityIndices base_means = distribution_means(baseline->dist);
      for (const ScenarioRow& row : rows) {
        if (&row == baseline) {
          pct += fmt(row.rto.mu_min) + "," + fmt(row.dist.nines.mean) + ",," +
                 fmt(row.dist.saidi.mean) + ",\n";
          figure += fmt(row.rto.mu_min) + ",0,0\n";
          continue;
        }
        const PercentDifferences diff =
            percent_difference(base_means, distribution_means(row.dist));
        pct += fmt(row.rto.mu_min) + "," + fmt(row.dist.nines.mean) + "," +
               fmt(diff.availability_nines_pct) + "," + fmt(row.dist.saidi.mean) +
               "," + fmt(diff.saidi_pct) + "\n";
        figure += fmt(row.rto.mu_min) + "," + fmt(diff.availability_nines_pct) +
                  "," + fmt(diff.saidi_pct) + "\n";
      }
      write_file(manifest.output_dir / "percent_diff.csv", pct);
      write_file(manifest.output_dir / "figure_data.csv", figure);
    }

    if (manifest.emit_samples) {
      std::string samples =
          "scenario,mu_rto_min,replication,failure_rate,availability,"
          "availability_nines,saidi,saifi\n";
      for (const ScenarioRow& row : rows) {
        for (std::size_t i = 0; i < row.samples.size(); ++i) {
          const ReliabilityIndices& s = row.samples[i];
          samples += file.name + "," + fmt(row.rto.mu_min) + "," +
                     std::to_string(i) + "," + fmt(s.failure_rate) + "," +
                     fmt(s.availability) + "," + fmt(s.nines) + "," +
                     fmt(s.saidi) + "," + fmt(s.saifi) + "\n";
        }
      }
      write_file(manifest.output_dir / "samples.csv", samples);
    }

    if (manifest.emit_timelines && !scenarios.empty()) {
      write_file(manifest.output_dir / "timelines_rep0.csv",
                 timeline_csv(scenarios.front()));
    }
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cpds
