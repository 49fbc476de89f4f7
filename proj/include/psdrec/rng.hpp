#pragma once

// Counter-based pseudo-random streams.
//
// Every draw is a pure function of (key, counter): the i-th 64-bit word of a
// stream keyed by k is splitmix64_mix(k + (i + 1) * kGolden). The constants
// below are the published SplitMix64 constants, so any implementation that
// reproduces them reproduces every instance, trial and sweep bit-for-bit.
//
//   kGolden = 0x9E3779B97F4A7C15
//   mix(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//           return z ^ (z >> 31)
//
// Uniforms use the top 53 bits: u = ((x >> 11) + 1) * 2^-53, so u is in (0, 1].
// Normals use the Box-Muller pair (r cos t, r sin t) with r = sqrt(-2 ln u1),
// t = 2 pi u2; both outputs are consumed in order.

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>

namespace psdrec {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a sequence of words into one seed; order-sensitive.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = splitmix64_mix(base + kGolden);
  for (std::uint64_t t : tags) {
    h = splitmix64_mix(h ^ (splitmix64_mix(t + kGolden) + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

inline std::uint64_t double_bits(double v) noexcept {
  // -0.0 and 0.0 name the same axis coordinate
  if (v == 0.0) v = 0.0;
  return std::bit_cast<std::uint64_t>(v);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGolden);
  }

  /// Uniform on (0, 1].
  double uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept {
    // (0,1] -> [0,1)
    const double u = 1.0 - uniform();
    return lo + (hi - lo) * u;
  }

  /// Integer in [0, bound) via the 128-bit multiply-shift map.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const unsigned __int128 p = static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(p >> 64);
  }

  double normal() noexcept {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(theta);
    return radius * std::cos(theta);
  }

  /// +1 or -1 with equal probability.
  double rademacher() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

}  // namespace psdrec
