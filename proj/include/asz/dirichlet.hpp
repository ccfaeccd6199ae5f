#pragma once

#include "asz/cyclo.hpp"
#include "asz/exact.hpp"
#include "asz/field.hpp"
#include "asz/poly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asz {

// chi_f modulo x^{d+1}: chi_f(g) = psi_a(Tr_{q/p} sum_i f(alpha_i)) where
// g = g(0) prod (1 - alpha_i x), and 0 when x | g.
struct DirichletChar {
  FieldPtr fq;
  std::uint32_t d = 0;
  PolyFq f;  // f(0) = 0, deg f <= d
  std::uint32_t a = 1;

  std::uint32_t p() const { return fq->p(); }
};

DirichletChar make_char(FieldPtr fq, const PolyFq& f, std::uint32_t d, std::uint32_t a);

// exponent k with chi(g) = zeta^{a k}, or -1 when x | g
int chi_exponent(const DirichletChar& chi, const PolyFq& g);
CycloElem chi_eval(const DirichletChar& chi, const PolyFq& g);

// L_chi(z) = sum over monic g, deg g <= d, of chi(g) z^{deg g}; index k holds z^k
std::vector<CycloElem> l_chi(const DirichletChar& chi, std::uint64_t cap = kDefaultCap);

struct FactorizationCheck {
  bool ok = false;
  std::vector<CycloElem> lchi;
  std::vector<CycloElem> expected;  // (1 - z) L_{f,psi}(z)
  std::vector<CycloElem> diff;
};
FactorizationCheck verify_factorization(FieldPtr fq, const PolyFq& f, std::uint32_t a,
                                        std::uint64_t cap = kDefaultCap);

// Either h = g1(x^p) g2(x^2) mod x^D, or the first level j (odd, p !| j) whose
// coefficient cannot be cleared.
struct DecompositionWitness {
  bool member = false;
  PolyFq g1, g2;
  std::uint32_t fail_level = 0;
  std::uint32_t obstruction = 0;
};

// Greedy lifting through the unit filtration. allow_even = false drops the g2
// factor, which is the membership test for p-th powers times constants.
DecompositionWitness k_membership(const Field& fq, const PolyFq& h, std::uint32_t D, bool allow_even = true);
bool verify_witness(const Field& fq, const PolyFq& h, std::uint32_t D, const DecompositionWitness& w);

enum class SubgroupKind { p_torsion_all, odd_f };

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::p_torsion_all;
  std::uint32_t d = 0;
};

// #H restricted to modulus x^D: q^{#{1 <= j < D : j not absorbable}}
std::uint64_t subgroup_size(const Field& fq, const SubgroupSpec& spec, std::uint32_t D);
// #K_D, the annihilator of H_D in the units mod x^D
std::uint64_t annihilator_size(const Field& fq, const SubgroupSpec& spec, std::uint32_t D);

// irreducible monic h of degree s, h != x, with h mod x^D in (H_D^k)^perp
std::uint64_t eta_subgroup(const Field& fq, const SubgroupSpec& spec, std::uint32_t s, std::uint32_t D,
                           std::uint32_t k = 1, std::uint64_t cap = kDefaultCap);

// average of T^r over the primitive characters of H modulo x^{d+1}
ExactScaled dirprop_average(const Field& fq, const SubgroupSpec& spec, int r, std::uint64_t cap = kDefaultCap);

struct ProbeDegree {
  std::uint32_t r = 0;
  std::uint64_t irreducibles = 0;
  std::uint64_t members = 0;
  std::uint64_t even_members = 0;
  std::vector<PolyFq> counterexamples;
};
// irreducible h of degree <= r_max lying in K mod x^d without being even polynomials
std::vector<ProbeDegree> niceconj_probe(const Field& fq, std::uint32_t d, std::uint32_t r_max,
                                        std::uint64_t cap = kDefaultCap);

}  // namespace asz
