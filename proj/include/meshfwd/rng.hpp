#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace meshfwd {

// Sebastiano Vigna's splitmix64 finalizer; used to derive sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stable, order-sensitive combination of a seed with a label.
inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t label) {
  return splitmix64(seed ^ (splitmix64(label) + 0x9E3779B97F4A7C15ull));
}

// Deterministic pseudo-random stream. The std:: distribution classes are
// implementation-defined, so draws are built from raw engine output to keep
// equal seeds producing equal sequences everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exponential with the given mean.
  double exponential(double mean) {
    return -mean * std::log1p(-uniform01());
  }

  bool coin_flip() { return (engine_() & 1u) != 0; }

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace meshfwd
