#pragma once

#include <cstdint>
#include <random>

namespace srk {

// Deterministic random stream. Distinct stream seeds derived through
// derive() are statistically independent; identical seeds replay
// identical draws, which the Monte Carlo and convergence modules rely on
// for reproducibility.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double normal() { return normal_(engine_); }
  double normal_sd(double stddev) { return stddev * normal_(engine_); }
  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t next_u64() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  // SplitMix64 finalizer over (master, stream); avalanches so that nearby
  // master seeds or stream indices give unrelated streams.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  RngStream substream(std::uint64_t index) const {
    return RngStream(derive(seed_, index));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace srk
