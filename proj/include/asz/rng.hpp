#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace asz {

// one independent engine per (seed, index); results do not depend on scheduling
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// unbiased draw from [0, n), n >= 1; spelled out so it is identical across standard libraries
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~0ull - (~0ull % n);
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

// standard normal via Box-Muller, also spelled out for portability
inline double standard_normal(std::mt19937_64& g) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double u1 = (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
  double u2 = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace asz
