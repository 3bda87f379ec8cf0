#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cpds/topology.hpp"

namespace cpds {

// Raised on schema or invariant violations; the message names the offending
// element.
struct FileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kNetworkFormatVersion = 1;

// Parses and validates a network document (see docs/file-formats.md).
Network load_network(const std::string& json_text);
Network load_network_file(const std::filesystem::path& path);

std::string network_to_json(const Network& net);

}  // namespace cpds
