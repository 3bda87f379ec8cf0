#include "cpds/random.hpp"

#include <bit>

namespace cpds {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += kGolden;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (kGolden * (b + 0x632BE59BD9B4E019ULL));
  return splitmix64_next(x);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) {
    word = splitmix64_next(s);
  }
}

RandomStream RandomStream::substream(std::uint64_t root_seed,
                                     std::uint64_t replication,
                                     std::uint64_t component_key) {
  return RandomStream(mix_key(mix_key(root_seed, replication), component_key));
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  ++draws_;
  return result;
}

double RandomStream::uniform_open_closed() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform_closed_open() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t component_key(ComponentKind kind, int component_id) {
  return (static_cast<std::uint64_t>(static_cast<int>(kind) + 1) << 32) |
         static_cast<std::uint32_t>(component_id);
}

std::uint64_t rto_stream_key() { return 0x52544F00ULL << 32; }

}  // namespace cpds
