#pragma once

#include <cstdint>
#include <random>

namespace simpairs {

using RngSeed = std::uint64_t;

/// SplitMix64 output function (Steele, Lea & Flood), a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stable child seed: mix64(mix64(base + G*(a+1)) + G*(b+1)) with G the
/// golden-ratio increment 0x9e3779b97f4a7c15. Used both for per-node
/// substreams and for per-(grid point, repetition) sweep seeds.
constexpr RngSeed derive_seed(RngSeed base, std::uint64_t a, std::uint64_t b = 0) noexcept {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  return mix64(mix64(base + kGolden * (a + 1)) + kGolden * (b + 1));
}

// Substream tags for derive_seed's second argument.
enum class Stream : std::uint64_t { Partner = 1, Coin = 2, Deletion = 3, Synthetic = 4 };

inline RngSeed derive_seed(RngSeed base, std::uint64_t a, Stream stream) noexcept {
  return derive_seed(base, a, static_cast<std::uint64_t>(stream));
}

// mt19937_64 with hand-rolled conversions: the standard distributions are
// implementation-defined, these are not.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound); bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace simpairs
