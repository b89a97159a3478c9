#pragma once

#include <cstdint>

namespace spherestat {

// SplitMix64 finalizer. Cheap, full-avalanche mixing of a 64-bit word.
std::uint64_t mix64(std::uint64_t z);

// Key for an independent substream. Callers that consume randomness hash
// their seed with a per-operation salt so substreams never collide across
// call sites that happen to share a user-facing seed.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t salt,
                         std::uint64_t index = 0);

// Counter-based pseudo-random stream: the n-th output is a pure function
// of (key, n). Replicates or samples can therefore be assigned to workers
// in any order without changing the values they produce. Deliberately not
// a std:: engine; std distributions are implementation-defined and would
// break bit-identical reports across platforms.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}
  Stream(std::uint64_t seed, std::uint64_t salt, std::uint64_t index = 0)
      : key_(derive_key(seed, salt, index)) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53 random bits.
  double next_unit();

  // Standard normal via Box-Muller; generates in pairs, caches the second.
  double next_normal();

  // Uniform on {0, ..., bound-1}, unbiased (rejection below the largest
  // multiple of bound).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace spherestat
