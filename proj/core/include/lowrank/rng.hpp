#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace lowrank {

/// Name recorded in run reports so that sampled outcomes can be reproduced.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-seeding+marsaglia-polar";

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based seed for stream `index` under `master`. Distinct indices give
/// statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Deterministic random stream. Only the engine's raw 64-bit output is used,
/// which the standard fixes bit-for-bit, so draws agree across standard
/// library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master, std::uint64_t index)
      : engine_(derive_seed(master, index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal draw (Marsaglia polar method).
  double gaussian();

  Eigen::VectorXd gaussian_vector(Eigen::Index dim);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lowrank
