#ifndef DTRACK_RNG_HPP
#define DTRACK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace dtrack {

// All randomness flows through mt19937_64 plus the explicit mappings below.
// std::*_distribution adapters are avoided on purpose: their output is
// implementation-defined, while mt19937_64's raw stream is pinned by the
// standard, so a (generator, seed) pair replays identically everywhere.
inline constexpr const char* kGeneratorId = "mt19937_64";

// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by scaling; n is small (player counts), so the
// scaling bias is far below anything observable.
inline std::uint32_t uniform_below(std::mt19937_64& engine, std::uint32_t n) {
  auto v = static_cast<std::uint32_t>(uniform_unit(engine) * static_cast<double>(n));
  return v < n ? v : n - 1;
}

// Standard normal via Box-Muller; consumes exactly two engine outputs.
inline double standard_normal(std::mt19937_64& engine) {
  double u1 = 1.0 - uniform_unit(engine);  // (0, 1], keeps log finite
  double u2 = uniform_unit(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// splitmix64 step, used to derive per-run seeds from (grid seed, cell,
// replicate) without correlated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace dtrack

#endif
