#pragma once

#include <cstdint>
#include <random>

namespace hfrelay {

/// SplitMix64 output function. Used to derive independent, reproducible
/// per-trial seeds from one experiment seed: stream t gets the t-th SplitMix64
/// output, so trials can run in any order or concurrently and still reproduce.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// The per-trial random stream. mt19937_64 is fully specified by the
/// standard, so draws are bit-identical across platforms.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64_at(seed, trial));
}

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Deliberately avoids std::uniform_real_distribution, whose algorithm is
/// implementation-defined and would break bit-level reproducibility.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unit-mean exponential draw by inverse CDF.
inline double unit_exponential(std::mt19937_64& rng) {
  return -std::log1p(-unit_uniform(rng));
}

} // namespace hfrelay
