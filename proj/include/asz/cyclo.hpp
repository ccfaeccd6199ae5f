#pragma once

#include "asz/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace asz {

// Element of Q(zeta_p) in the basis 1, zeta, ..., zeta^{p-2}.
// zeta^{p-1} is always rewritten as -(1 + zeta + ... + zeta^{p-2}).
class CycloElem {
 public:
  CycloElem() = default;
  explicit CycloElem(std::uint32_t p);
  CycloElem(std::uint32_t p, std::vector<Rational> coords);

  static CycloElem zero(std::uint32_t p) { return CycloElem(p); }
  static CycloElem integer(std::uint32_t p, Rational v);
  static CycloElem zeta_power(std::uint32_t p, std::int64_t k);
  // sum_k counts[k] * zeta^{a k}
  static CycloElem from_counts(std::uint32_t p, std::span<const std::uint64_t> counts, std::uint32_t a);
  static CycloElem from_signed_counts(std::uint32_t p, std::span<const std::int64_t> counts,
                                      std::uint32_t a);

  std::uint32_t p() const { return p_; }
  const std::vector<Rational>& coords() const { return c_; }

  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  CycloElem operator-() const;
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  CycloElem scaled(const Rational& s) const;
  friend bool operator==(const CycloElem& a, const CycloElem& b) = default;

  // zeta -> zeta^{-1}
  CycloElem conj() const;
  // zeta -> zeta^k, k prime to p
  CycloElem galois(std::uint32_t k) const;

  bool is_zero() const;
  bool is_integral() const;
  // true when every coordinate but the constant one vanishes
  bool is_rational() const;
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  std::complex<double> embed() const;
  std::complex<long double> embed_long() const;

  // "[c0,c1,...]" with rational coordinates
  std::string str() const;

 private:
  void check_same(const CycloElem& o) const;
  std::uint32_t p_ = 0;
  std::vector<Rational> c_;
};

// psi_a(x) = zeta^{a x}; a = 0 is the trivial character and is rejected
CycloElem additive_character(std::uint32_t a, std::uint32_t x, std::uint32_t p);

// exp(2 pi i k / p)
std::complex<double> root_of_unity(std::uint32_t p, std::int64_t k);

}  // namespace asz
