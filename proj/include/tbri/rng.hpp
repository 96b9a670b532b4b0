#pragma once

#include <cmath>
#include <cstdint>

namespace tbri::rng {

/// SplitMix64 finalizer. Used both as a stream-derivation mixer and to seed
/// the main generator state.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from (base, tag). Pure function,
/// documented so serialized seeds reproduce across builds:
///   derive(base, tag) = splitmix64(splitmix64(base) ^ (0x9E3779B97F4A7C15 * (tag + 1)))
constexpr std::uint64_t derive_stream(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(splitmix64(base) ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
}

/// xoshiro256** (Blackman/Vigna), state seeded from SplitMix64. The integer
/// sequence is platform-independent; Gaussian variates go through libm
/// (log/cos/sin), so they are bit-stable per build, identical across re-runs
/// and worker counts on the same machine.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      word = splitmix64(x);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on (0, 1): ((x >> 11) + 0.5) * 2^-53, never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached, so draws come in a fixed documented order.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace tbri::rng
