#pragma once

#include <stdexcept>
#include <string>

namespace asz {

// bad (p, n, d, r) combinations and other caller mistakes
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// q^r (or a family) too large to enumerate under the configured cap
struct CapExceeded : std::length_error {
  using std::length_error::length_error;
};

// overflow, non-integral L coefficients, root finder failures
struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr unsigned long long kDefaultCap = 1ull << 24;

}  // namespace asz
