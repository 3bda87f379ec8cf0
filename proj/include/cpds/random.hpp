#pragma once

#include <array>
#include <cstdint>

namespace cpds {

// xoshiro256++ behind splitmix64 seeding. One stream per simulation
// activity; streams are never shared between concurrent work.
//
// Substreams are keyed by (root seed, replication, component key). The keys
// do not involve any scenario parameter, so sweeps over operator response
// time replay identical failure and repair randomness.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream substream(std::uint64_t root_seed,
                                std::uint64_t replication,
                                std::uint64_t component_key);

  std::uint64_t next_u64();

  // Uniform on (0,1]; never 0, safe under log().
  double uniform_open_closed();
  // Uniform on [0,1).
  double uniform_closed_open();

  // Number of raw 64-bit draws consumed so far.
  std::uint64_t draws() const { return draws_; }

  bool operator==(const RandomStream&) const = default;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

enum class ComponentKind : int { Branch = 0, CommSwitch = 1, Controller = 2 };

// Stable substream keys (documented in docs/file-formats.md).
std::uint64_t component_key(ComponentKind kind, int component_id);
std::uint64_t rto_stream_key();

}  // namespace cpds
