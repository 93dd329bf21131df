#pragma once

#include <cmath>
#include <cstdint>

namespace relia {

// SplitMix64 (Steele, Lea, Flood 2014). Small, fast, and good enough for
// Monte Carlo work; chosen over <random> engines so that simulation output
// is identical across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform draw in (0, 1] (safe to pass through log).
  double next_double_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller. Two uniforms per call, no rejection,
  /// so the stream position is predictable.
  double next_normal() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
} // namespace detail

/// Derives an independent stream state from (seed, stream index). Counter
/// based: stream i never depends on how many streams exist, so per-trial
/// results are stable under any trial count or execution order.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t s = detail::scramble(seed + 0x9e3779b97f4a7c15ULL);
  return SplitMix64(detail::scramble(s ^ (stream * 0xd1342543de82ef95ULL)));
}

} // namespace relia
