#ifndef RFC_RNG_HPP
#define RFC_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace rfc::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer: bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Collapse an ordered word sequence into one stream key.
constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x8AFE04C5E7A96B1Dull;
  for (std::uint64_t w : words) {
    h = mix64((h + kGolden) ^ mix64(w + kGolden));
  }
  return h;
}

/// Counter-based deterministic generator (SplitMix64 sequence).
///
/// Output i is a pure function of (seed, stream, i), so streams keyed by
/// different ids are independently addressable without generating
/// predecessors. Bounded draws use rejection sampling, never a bare modulo.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(derive_key({seed, stream})) {}

  explicit CounterRng(std::uint64_t key) : base_(key) {}

  std::uint64_t next() noexcept { return mix64(base_ + (++counter_) * kGolden); }

  /// Uniform integer in [0, n).  pre: n > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1).
  double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace rfc::rng

#endif
