#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bellforge {

/// SplitMix64. Small, fast, and identical on every platform, which keeps the
/// randomized runs (Haar sampling, optimizer restarts, bound sampling)
/// reproducible from a single seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent substream seed from (seed, stream index).
/// Restarts, samples and states each get their own substream, so parallel
/// schedules cannot change any result.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0x6a09e667f3bcc909ull + stream * 0x3c6ef372fe94f82bull));
  mix.next();
  return mix.next();
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return gen_.next() % bound;
  }

  /// Standard normal via Box-Muller (no library distributions, for
  /// cross-platform determinism).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bellforge
