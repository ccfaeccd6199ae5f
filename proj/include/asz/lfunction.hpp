#pragma once

#include "asz/cyclo.hpp"
#include "asz/exact.hpp"
#include "asz/field.hpp"
#include "asz/poly.hpp"
#include "asz/sweep.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace asz {

// #{alpha in F_{q^r} : Tr f(alpha) = k}, Horner in the top field
std::vector<std::uint64_t> trace_value_counts(const PolyFq& f, const FieldTower& tower);
// S_r(f, psi_a) = sum over F_{q^r} of psi_a(Tr f(alpha))
CycloElem char_sum(const PolyFq& f, std::uint32_t a, const FieldTower& tower);

struct CharSumVector {
  PolyFq f;
  std::uint32_t a = 1;
  std::vector<CycloElem> sums;  // sums[r-1] = S_r
};

// S_1..S_{max_r} through the Horner route
CharSumVector char_sums(const PolyFq& f, std::uint32_t a, const std::vector<FieldTower>& towers,
                        std::uint32_t max_r);
// S_1..S_{max_r} of one sweep member
std::vector<CycloElem> char_sums(const SweepResult& sweep, std::uint64_t member, std::uint32_t a,
                                 std::uint32_t max_r);

// T^r = -q^{-r/2} S_r
ExactScaled trace_power_exact(const CycloElem& s_r, int r);

struct LPoly {
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::uint32_t d = 0;
  std::vector<CycloElem> c;  // c[0] = 1, degree d-1

  int degree() const { return static_cast<int>(c.size()) - 1; }
  std::vector<std::complex<long double>> complex_coeffs() const;
};

// c_0 = 1, k c_k = sum_{j=1}^k S_j c_{k-j}; sums holds at least S_1..S_{d-1}
LPoly l_polynomial_from_sums(std::uint32_t p, std::uint64_t q, std::uint32_t d,
                             const std::vector<CycloElem>& sums);
LPoly l_polynomial(const PolyFq& f, std::uint32_t a, std::uint32_t p, std::uint32_t n,
                   std::uint64_t cap = kDefaultCap);

struct ZeroSet {
  std::vector<std::complex<double>> z;    // zeros of L
  std::vector<std::complex<double>> rho;  // (q^{1/2} z)^{-1}
  std::vector<double> theta;              // arg rho in [0, 2 pi), ascending
  bool rh_ok = true;
  double max_rh_deviation = 0;            // max | |rho| - 1 |
  double max_residual = 0;                // max |L(z)| / max |c_k|
};

inline constexpr double kRhTolerance = 1e-8;

ZeroSet zeros(const LPoly& L);
// zeros of sum_k c_k z^k with c_0 = 1, normalized with q
ZeroSet zeros_of(const std::vector<std::complex<long double>>& c, double q);

// sum_i rho_i^r, any integer r
std::complex<double> trace_power(const ZeroSet& zs, int r);

}  // namespace asz
