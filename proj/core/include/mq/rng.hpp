#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mq {

// Stable 64-bit mixing used for seed derivation. Splitmix64 finalizer over an
// FNV-1a accumulator, so derived seeds are identical on every platform.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t hash_str(std::uint64_t h, std::string_view s) {
  std::uint64_t fnv = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    fnv ^= c;
    fnv *= 0x100000001b3ULL;
  }
  return hash_combine(h, fnv);
}

// Derivation for per-experiment-cell seeds: one cell = (dt index, seed index)
// inside a named experiment. No RNG state is shared across cells.
inline std::uint64_t derive_cell_seed(std::uint64_t master_seed,
                                      std::string_view experiment,
                                      std::uint64_t dt_index,
                                      std::uint64_t seed_index) {
  std::uint64_t h = mix64(master_seed);
  h = hash_str(h, experiment);
  h = hash_combine(h, dt_index);
  h = hash_combine(h, seed_index);
  return h;
}

// One named substream of a master seed. Consumers own disjoint streams
// (price moves, ask fills, bid fills, exploration draws), so adding a new
// consumer never perturbs the draws of existing ones.
class RngStream {
 public:
  RngStream() : engine_(0) {}
  RngStream(std::uint64_t master_seed, std::string_view name)
      : engine_(hash_str(mix64(master_seed), name)) {}

  // Uniform double in [0, 1) with the top 53 bits of the engine output.
  // Hand-assembled instead of std::uniform_real_distribution so that
  // trajectories are bit-identical across standard library implementations.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0, ..., n-1} by rejection, bias-free.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mq
