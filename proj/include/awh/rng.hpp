#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace awh {

/// SplitMix64 output function. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`.
///
///   derive_seed(S, k) = splitmix64(S ^ splitmix64(k))
///
/// Replicate k of a study seeded with S, chunk k of a crude Monte Carlo run
/// and seed chain k of a subset level all use this derivation, so every stream
/// is reproducible on its own regardless of execution order or thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

/// Deterministic generator owned by exactly one chain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits; never returns 1.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() { return normal_(engine_); }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Independent child generator for stream `k`, keyed on a fresh draw.
  Rng split(std::uint64_t k) { return Rng(derive_seed(engine_(), k)); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace awh
