#pragma once

#include "asz/cyclo.hpp"

#include <complex>
#include <cstdint>
#include <string>

namespace asz {

// value * q^{half_power / 2}
struct ExactScaled {
  CycloElem value;
  int half_power = 0;

  std::complex<double> to_complex(std::uint64_t q) const;
  double real(std::uint64_t q) const { return to_complex(q).real(); }
  // "num=[a,b,...];den=D;qpow=k" with integer numerators over a common denominator
  std::string field() const;
  friend bool operator==(const ExactScaled&, const ExactScaled&) = default;
};

// q^{k/2} as long double
long double half_power_of(std::uint64_t q, int k);

}  // namespace asz
