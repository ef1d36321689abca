#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace uavloc {

/// splitmix64 finalizer; full-avalanche mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t word) {
  return mix64(base + 0x9E3779B97F4A7C15ull * (word + 1));
}

/// Deterministic counter-based random stream (splitmix64 core).
///
/// Measurement streams are keyed by (master_seed, run, uav, epoch), so the
/// noise realization of a given measurement slot never depends on which
/// planner produced the trajectory. Planner comparisons therefore run on
/// identical noise when they share a master seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream measurement_stream(std::uint64_t master_seed, std::uint64_t run_index,
                                      std::uint64_t uav_id, std::uint64_t epoch) {
    return RngStream(derive_seed(derive_seed(derive_seed(master_seed, run_index), uav_id), epoch));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  /// Uniform double strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// One standard-normal draw (Box-Muller; consumes two uniforms per call).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace uavloc
