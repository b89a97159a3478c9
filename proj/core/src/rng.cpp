#include "spherestat/rng.hpp"

#include <cmath>

namespace spherestat {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t salt,
                         std::uint64_t index) {
  return mix64(mix64(seed ^ salt * kGolden) + index * 0xD1B54A32D192ED03ull);
}

std::uint64_t Stream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Stream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Stream::next_below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t raw = next_u64();
    if (raw >= threshold) return raw % bound;
  }
}

}  // namespace spherestat
