#include "asz/exact.hpp"

#include <cmath>
#include <numeric>

namespace asz {

long double half_power_of(std::uint64_t q, int k) {
  return std::pow(static_cast<long double>(q), static_cast<long double>(k) / 2.0L);
}

std::complex<double> ExactScaled::to_complex(std::uint64_t q) const {
  auto v = value.embed_long() * half_power_of(q, half_power);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::string ExactScaled::field() const {
  std::int64_t den = 1;
  for (const auto& c : value.coords()) den = std::lcm(den, c.den());
  std::string s = "num=[";
  bool first = true;
  for (const auto& c : value.coords()) {
    if (!first) s += ',';
    first = false;
    s += std::to_string((c * Rational(den)).num());
  }
  s += "];den=" + std::to_string(den) + ";qpow=" + std::to_string(half_power);
  return s;
}

}  // namespace asz
