#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpds/scenario_io.hpp"

namespace cpds {

inline constexpr int kManifestFormatVersion = 1;

// Batch run description: which scenario file to simulate, where results go,
// and the knobs that do not change the study itself.
struct RunManifest {
  std::filesystem::path scenario_path;
  std::filesystem::path output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<RtoParameters>> sweep;
  unsigned parallelism = 0;  // 0 = hardware concurrency
  bool emit_samples = false;
  bool emit_timelines = false;
};

// Reads a manifest document; the scenario path is resolved relative to the
// manifest's directory, the output directory relative to the working
// directory.
RunManifest load_manifest_file(const std::filesystem::path& path);

// Reports every schema or invariant violation without running anything.
// An empty list means the manifest is runnable.
std::vector<std::string> validate_manifest(const RunManifest& manifest);

// Runs all scenarios and writes the result tables. Returns 0 when every
// requested output was written; 1 otherwise (diagnostics on `log`).
int run(const RunManifest& manifest, std::ostream& log);

}  // namespace cpds
