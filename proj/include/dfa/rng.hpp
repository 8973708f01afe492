#pragma once

#include <cstdint>

namespace dfa {

// Deterministic PRNG with explicit stream derivation. We avoid the standard
// <random> distributions because their output is implementation-defined; the
// traces we emit are required to be reproducible from (seed, config) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // splitmix warmup so that small seeds do not produce correlated streams
    next_u64();
    next_u64();
  }

  // Independent stream derived from the same logical seed. Streams with
  // distinct ids never share state.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
  }

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [0, n)
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace dfa
