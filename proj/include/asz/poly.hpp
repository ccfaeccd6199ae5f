#pragma once

#include "asz/field.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace asz {

// Polynomial over a finite field, coefficients low to high, no trailing zeros.
struct PolyFq {
  std::vector<std::uint32_t> c;

  PolyFq() = default;
  explicit PolyFq(std::vector<std::uint32_t> coeffs) : c(std::move(coeffs)) { trim(); }

  static PolyFq constant(std::uint32_t a) { return PolyFq(std::vector<std::uint32_t>{a}); }
  static PolyFq monomial(std::uint32_t a, std::size_t k);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  std::uint32_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  std::uint32_t lead() const { return c.empty() ? 0 : c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  friend bool operator==(const PolyFq&, const PolyFq&) = default;
};

PolyFq poly_add(const Field& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_sub(const Field& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mul(const Field& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_scale(const Field& F, const PolyFq& a, std::uint32_t s);
std::pair<PolyFq, PolyFq> poly_divmod(const Field& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mod(const Field& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_monic(const Field& F, const PolyFq& a);
PolyFq poly_gcd(const Field& F, PolyFq a, PolyFq b);
PolyFq poly_derivative(const Field& F, const PolyFq& a);
// a mod x^k
PolyFq poly_truncate(const PolyFq& a, std::size_t k);
// true when monic b divides a; cheap path used by trial division
bool divides_monic(const Field& F, const PolyFq& b, const PolyFq& a);

// Horner evaluation of f (coefficients in F_q) at alpha in an extension L of F_q.
// Valid because F_q indices embed unchanged into L.
std::uint32_t poly_eval(const Field& L, const PolyFq& f, std::uint32_t alpha);

// monic polynomial of degree k whose lower coefficients are the base-q digits of idx
PolyFq monic_from_index(const Field& F, std::size_t k, std::uint64_t idx);

// Monic irreducibles over F, cached by degree, found by trial division against
// lower degrees. Lex order, coefficient tuples compared high degree first.
class IrreducibleTable {
 public:
  IrreducibleTable(const Field& F, std::size_t max_degree, std::uint64_t cap = kDefaultCap);
  std::size_t max_degree() const { return by_degree_.size() - 1; }
  const std::vector<PolyFq>& of_degree(std::size_t e) const;
  bool is_irreducible(const PolyFq& f) const;

 private:
  const Field* F_;
  std::vector<std::vector<PolyFq>> by_degree_;
};

std::vector<PolyFq> enumerate_irreducibles(const Field& F, std::size_t e, std::uint64_t cap = kDefaultCap);
// necklace count (1/e) sum_{m|e} mu(m) q^{e/m}
std::uint64_t count_irreducibles(std::size_t e, std::uint64_t q);
int integer_mobius(std::uint64_t n);

// trial division by irreducibles up to deg P; factors returned monic, in table order
std::vector<std::pair<PolyFq, int>> factor(const Field& F, const PolyFq& P,
                                           std::uint64_t cap = kDefaultCap);
int mobius(const Field& F, const PolyFq& P, std::uint64_t cap = kDefaultCap);

// monic minimal polynomial over F_q of alpha in F_{q^r}
PolyFq minimal_poly(const FieldTower& tower, std::uint32_t alpha);
// x^s h(1/x)
PolyFq reciprocal(const PolyFq& h);

// "c0,c1,...,cd" with field element indices
std::string poly_to_string(const PolyFq& f);
PolyFq poly_from_string(const Field& F, const std::string& s);
// human form, e.g. "x^2+2*x+1"
std::string poly_pretty(const PolyFq& f);

}  // namespace asz
