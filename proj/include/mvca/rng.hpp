#pragma once

#include <cstdint>
#include <random>

namespace mvca {

// Deterministic uniform draws.  std::uniform_real_distribution is
// implementation-defined, so doubles are built from raw mt19937_64 words;
// results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, bound) via rejection-free 128-bit scaling.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for one batch trial, independent of execution order and worker count.
inline std::uint64_t trial_seed(std::uint64_t base, int n, int trial) {
  return mix_seed(mix_seed(base + 0x100000001ull * static_cast<std::uint64_t>(n)) +
                  static_cast<std::uint64_t>(trial));
}

}  // namespace mvca
