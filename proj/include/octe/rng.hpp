#pragma once

#include <cstdint>
#include <span>

namespace octe::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer (the avalanche step without the increment).
constexpr std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic key for a (seed, stream, counter) substream. Used for
/// counter-mode draws: every (variable, sample) pair gets its own key, so
/// sampling is reproducible under any parallel schedule.
constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream,
                                      std::uint64_t counter) {
  std::uint64_t k = avalanche(seed + kGolden);
  k = avalanche(k ^ (stream + kGolden));
  return avalanche(k ^ (counter + kGolden));
}

/// Map 64 random bits to a double in [0, 1).
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// SplitMix64 sequential generator (Steele, Lea & Flood).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() { return avalanche(state_ += kGolden); }
  constexpr double uniform01() { return to_unit(next()); }

  /// Uniform integer in [0, n) via the multiply-shift bound (n >= 1).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by a SplitMix64 stream.
template <typename T>
void shuffle(std::span<T> values, SplitMix64& gen) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = gen.below(static_cast<std::uint32_t>(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace octe::rng
