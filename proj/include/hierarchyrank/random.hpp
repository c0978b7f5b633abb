#pragma once

// Portable random draws. The standard distributions are implementation
// defined, so outputs would differ between standard libraries; these helpers
// only depend on the raw mt19937_64 stream.

#include <cstdint>
#include <random>

namespace hierarchyrank {

using Engine = std::mt19937_64;

/// splitmix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the `index`-th task of stream `stream` under a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return mix_seed(mix_seed(base ^ mix_seed(stream)) + index);
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = Engine::max() - (Engine::max() % n + 1) % n;
  std::uint64_t x = rng();
  while (x > limit) x = rng();
  return x % n;
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hierarchyrank
