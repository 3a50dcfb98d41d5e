#pragma once

#include <cstdint>
#include <string_view>

namespace tseval {

/// Identifier of the random number generation scheme, reported by --version
/// and embedded in every report. Stream seeds are derived with splitmix64;
/// draws come from xoshiro256++ seeded via four splitmix64 steps. Given the
/// same seed, a conforming reimplementation produces the same streams.
inline constexpr std::string_view kRngId = "splitmix64+xoshiro256++ v1";

/// One splitmix64 step as a pure finalizer: splitmix64(x) is the output of
/// the canonical splitmix64 generator whose state was x.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// FNV-1a over bytes; maps subject ids and metric names to stream ids.
constexpr std::uint64_t fnv1a64(std::string_view s,
                                std::uint64_t h = 0xCBF29CE484222325ULL) noexcept {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Mixes a global seed with a stream id. Streams are independent of each
/// other, so adding or reordering streams never perturbs existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream));
}

/// xoshiro256++ (Blackman & Vigna, public domain reference algorithm).
class Xoshiro256pp {
 public:
  explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept : state_{} {
    for (int i = 0; i < 4; ++i) {
      state_[i] = splitmix64(seed + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL);
    }
  }

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) using the top 53 bits.
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) without modulo bias (Lemire's method).
  std::uint64_t next_below(std::uint64_t n) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace tseval
