#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dualkosz {

/// All randomness in the library flows through mt19937_64 streams. A stream is
/// identified by (seed, stream id); distinct ids give independent streams, so a
/// solve, an instance generator and a noise source never share state.
using Rng = std::mt19937_64;

namespace stream {
inline constexpr std::uint64_t kSolver = 1;
inline constexpr std::uint64_t kPrimalSolver = 2;
inline constexpr std::uint64_t kInstance = 3;
inline constexpr std::uint64_t kNoise = 4;
inline constexpr std::uint64_t kQueries = 5;
}  // namespace stream

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Uniform in [0, 1) with 53 random bits. Spelled out rather than using
/// std::uniform_real_distribution so draws are identical across standard
/// libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, bound), bound > 0, by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace dualkosz
