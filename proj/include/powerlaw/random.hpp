#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace powerlaw {

/// Default seed used by the CLI when none is given.
inline constexpr std::uint64_t kDefaultSeed = 42;

namespace detail {

// SplitMix64 finalizer. Used to derive decorrelated child seeds from a
// master seed plus integer tags, so any single Monte-Carlo cell can be
// reproduced in isolation.
inline std::uint64_t split_mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic child seed from (master, a, b).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t h = detail::split_mix64(master);
  h = detail::split_mix64(h ^ detail::split_mix64(a));
  h = detail::split_mix64(h ^ detail::split_mix64(b));
  return h;
}

/// Seeded uniform stream for inverse-transform sampling.
///
/// Uniforms are drawn on (0, 1] -- zero is excluded so inverse tail
/// functions stay finite. The mapping from the mt19937_64 output is fixed
/// here (rather than going through std::uniform_real_distribution, whose
/// output is implementation-defined) so identical seeds give identical
/// streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw on (0, 1].
  double uniform_unit() {
    // (k + 1) / 2^53 for k in [0, 2^53), i.e. the grid {2^-53, ..., 1}.
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Unit-rate exponential via inversion.
  double exponential() { return -std::log(uniform_unit()); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace powerlaw
