#pragma once

#include <cstdint>

// Counter-based pseudo-random generator.
//
// Every draw is a pure function of (seed, stream, counter), so any draw in a
// campaign can be reproduced without replaying the ones before it.  That is
// what makes the OpenMP campaign kernel bit-identical to the serial reference
// for any thread count or schedule.  std::uniform_real_distribution is
// deliberately not used anywhere: its output is not portable across standard
// library implementations, and output files must be byte-identical for a
// given config + seed.

namespace qchan {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer (Steele/Lea/Flood).  Bijective on u64.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t w) noexcept {
  return mix64(h ^ (w + kGoldenGamma + (h << 6) + (h >> 2)));
}

// Identifies an independent substream of a seeded generator.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

class Rng {
 public:
  Rng() noexcept : Rng(RngState{}) {}
  explicit Rng(RngState s) noexcept
      : key_(hash_combine(mix64(s.seed ^ kGoldenGamma), s.stream)) {}

  std::uint64_t next_u64() noexcept { return mix64(key_ + (counter_++) * kGoldenGamma); }

  // Uniform on [0, 1): 53 mantissa bits, never returns 1.0.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_unit();
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Draw purposes keep preparation and measurement streams independent even if
// the number of uniforms consumed by one of them changes.
enum class Draw : std::uint64_t {
  Preparation = 1,
  Measurement = 2,
};

// Substream for one campaign repetition.
inline RngState repetition_stream(std::uint64_t seed, std::uint64_t repetition) noexcept {
  return RngState{seed, mix64(repetition)};
}

// Generator for one (trial, purpose) within a repetition substream.
inline Rng trial_rng(RngState repetition, std::uint64_t trial, Draw purpose) noexcept {
  RngState s = repetition;
  s.stream = hash_combine(hash_combine(s.stream, trial), static_cast<std::uint64_t>(purpose));
  return Rng(s);
}

}  // namespace qchan
