#pragma once

#include <cstdint>

namespace graphmean {

/// Default seed used by every randomized entry point that is not given one.
inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Splittable counter-based stream: substream `index` of `seed` is the
/// splitmix64 finalizer applied to seed + (index+1) * golden ratio. The value
/// depends only on (seed, index), so consumers may draw substreams in any
/// order, from any thread, and still reproduce bit-identical results.
inline std::uint64_t split_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from 64 random bits (53-bit mantissa fill).
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace graphmean
