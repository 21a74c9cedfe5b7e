#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace immocz {

namespace internal {

// SplitMix64 step (Steele, Lea, Vigna). Bijective in the state, which makes
// the (master, point, trial) -> seed derivation collision-free in the trial
// index for a fixed master seed and point.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace internal

/// Deterministic per-trial random stream. Every Monte Carlo trial owns one,
/// derived from (master_seed, point_index, trial_index), so results do not
/// depend on scheduling or worker count. The 64-bit seed material fully
/// determines the stream and round-trips through serialization.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed_material)
      : seed_material_(seed_material), engine_(seed_material) {}

  static std::uint64_t derive_seed(std::uint64_t master_seed,
                                   std::uint64_t point_index,
                                   std::uint64_t trial_index) {
    std::uint64_t h = internal::splitmix64(master_seed);
    h = internal::splitmix64(h ^ point_index);
    h = internal::splitmix64(h ^ trial_index);
    return h;
  }

  static RngStream derive(std::uint64_t master_seed, std::uint64_t point_index,
                          std::uint64_t trial_index) {
    return RngStream(derive_seed(master_seed, point_index, trial_index));
  }

  std::uint64_t seed_material() const { return seed_material_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double next_double() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  bool next_bit() { return (engine_() >> 63) != 0; }

  /// Standard real Gaussian draw.
  double next_gaussian() { return normal_(engine_); }

  /// Circularly symmetric complex Gaussian with total variance `variance`
  /// (each real component carries variance/2).
  std::complex<double> next_complex_gaussian(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = s * next_gaussian();
    const double im = s * next_gaussian();
    return {re, im};
  }

 private:
  std::uint64_t seed_material_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace immocz
