#include "asz/dirichlet.hpp"
#include "asz/ensemble.hpp"
#include "asz/families.hpp"
#include "asz/lfunction.hpp"
#include "asz/sweep.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace asz;

namespace {

// residues mod x^D of products g1(x^p) g2(x^2) (or c g1(x^p) when even is false)
std::set<std::vector<std::uint32_t>> brute_subgroup(const Field& F, std::uint32_t D, bool even) {
  const std::uint32_t p = F.p();
  const std::uint64_t q = F.order();
  std::vector<std::uint32_t> pe, te;  // exponents of x^p and x^2 below D
  for (std::uint32_t j = 0; j * p < D; ++j) pe.push_back(j * p);
  for (std::uint32_t j = 0; j * 2 < D; ++j) te.push_back(j * 2);
  auto count = [&](const std::vector<std::uint32_t>& e) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < e.size(); ++i) c *= q;
    return c;
  };
  auto build = [&](const std::vector<std::uint32_t>& exps, std::uint64_t idx) {
    std::vector<std::uint32_t> c(D, 0);
    for (auto e : exps) {
      c[e] = static_cast<std::uint32_t>(idx % q);
      idx /= q;
    }
    return PolyFq(c);
  };
  std::set<std::vector<std::uint32_t>> out;
  const std::uint64_t n1 = count(pe);
  const std::uint64_t n2 = even ? count(te) : q;
  for (std::uint64_t i = 0; i < n1; ++i) {
    PolyFq g1 = build(pe, i);
    if (g1.coeff(0) == 0) continue;
    for (std::uint64_t j = 0; j < n2; ++j) {
      PolyFq g2 = even ? build(te, j) : PolyFq::constant(static_cast<std::uint32_t>(j));
      if (g2.coeff(0) == 0) continue;
      auto prod = poly_truncate(poly_mul(F, g1, g2), D);
      prod.c.resize(D, 0);
      out.insert(prod.c);
    }
  }
  return out;
}

}  // namespace

TEST(Dirichlet, CharacterIsMultiplicative) {
  auto F = Field::prime(3);
  auto chi = make_char(F, PolyFq({0, 1, 2, 0, 1}), 4, 1);
  std::mt19937_64 g(3);
  for (int it = 0; it < 200; ++it) {
    std::vector<std::uint32_t> a(1 + g() % 5), b(1 + g() % 5);
    for (auto& x : a) x = static_cast<std::uint32_t>(g() % 3);
    for (auto& x : b) x = static_cast<std::uint32_t>(g() % 3);
    a[0] = 1 + static_cast<std::uint32_t>(g() % 2);
    b[0] = 1 + static_cast<std::uint32_t>(g() % 2);
    PolyFq A(a), B(b);
    const int ka = chi_exponent(chi, A), kb = chi_exponent(chi, B);
    ASSERT_GE(ka, 0);
    EXPECT_EQ(chi_exponent(chi, poly_mul(*F, A, B)), (ka + kb) % 3);
    // only the residue mod x^{d+1} matters
    EXPECT_EQ(chi_exponent(chi, poly_truncate(A, 5)), ka);
  }
  EXPECT_EQ(chi_exponent(chi, PolyFq({0, 1})), -1);
  EXPECT_TRUE(chi_eval(chi, PolyFq({0, 1, 1})).is_zero());
}

TEST(Dirichlet, LinearCharacterValues) {
  // chi_x(1 - alpha x) = psi(Tr alpha); deg 1 monic g = x + c gives psi(-1/c)
  auto F = Field::prime(3);
  auto chi = make_char(F, PolyFq({0, 1}), 1, 1);
  EXPECT_EQ(chi_exponent(chi, PolyFq({1, 1})), 2);
  EXPECT_EQ(chi_exponent(chi, PolyFq({2, 1})), 1);
  EXPECT_EQ(chi_exponent(chi, PolyFq::constant(2)), 0);
}

TEST(Dirichlet, FactorizationExamples) {
  auto F = Field::prime(3);
  auto chk = verify_factorization(F, PolyFq({0, 1}), 1);
  EXPECT_TRUE(chk.ok);
  ASSERT_EQ(chk.lchi.size(), 2u);
  EXPECT_EQ(chk.lchi[0], CycloElem::integer(3, 1));
  EXPECT_EQ(chk.lchi[1], CycloElem::integer(3, -1));
  auto chi = make_char(F, PolyFq({0, 0, 1}), 2, 1);
  EXPECT_EQ(l_chi(chi).size(), 3u);
}

TEST(Dirichlet, FactorizationHoldsOnSmallFamilies) {
  for (auto [p, n, d] : {std::tuple{3u, 1u, 2u}, std::tuple{3u, 1u, 4u}, std::tuple{2u, 1u, 3u}, std::tuple{2u, 2u, 3u}}) {
    auto fq = FieldTower::build(p, n, 1).fq_ptr();
    for (const auto& f : enumerate({FamilyKind::full, p, n, d}))
      for (std::uint32_t a = 1; a < p; ++a) EXPECT_TRUE(verify_factorization(fq, f, a).ok) << poly_to_string(f);
  }
}

TEST(Decompose, WitnessExample) {
  auto F = Field::prime(3);
  // (1+x)^3 (1+x^2) = (1 + x^3)(1 + x^2)
  PolyFq h = poly_mul(*F, PolyFq({1, 0, 0, 1}), PolyFq({1, 0, 1}));
  auto w = k_membership(*F, h, 10);
  ASSERT_TRUE(w.member);
  EXPECT_TRUE(verify_witness(*F, h, 10, w));
  auto e = k_membership(*F, PolyFq({1, 0, 1}), 10);
  ASSERT_TRUE(e.member);
  EXPECT_EQ(e.g2, PolyFq({1, 1}));
  auto bad = k_membership(*F, PolyFq({1, 1}), 10);
  EXPECT_FALSE(bad.member);
  EXPECT_EQ(bad.fail_level, 1u);
}

TEST(Decompose, MatchesSubgroupEnumeration) {
  auto F = Field::prime(3);
  for (bool even : {true, false}) {
    auto K = brute_subgroup(*F, 5, even);
    int units = 0;
    for (std::uint64_t idx = 1; idx < 243; ++idx) {
      std::vector<std::uint32_t> c(5);
      std::uint64_t t = idx;
      for (auto& x : c) {
        x = static_cast<std::uint32_t>(t % 3);
        t /= 3;
      }
      PolyFq h(c);
      if (!c[0]) {
        // x | h: never in K, rejected up front
        EXPECT_EQ(K.count(c), 0u);
        EXPECT_THROW(k_membership(*F, h, 5, even), InvalidParameter);
        continue;
      }
      ++units;
      auto w = k_membership(*F, h, 5, even);
      EXPECT_EQ(w.member, K.count(c) > 0) << poly_to_string(h);
      if (w.member) {
        EXPECT_TRUE(verify_witness(*F, h, 5, w));
      }
    }
    EXPECT_EQ(units, 162);
    SubgroupSpec spec{even ? SubgroupKind::odd_f : SubgroupKind::p_torsion_all, even ? 5u : 4u};
    EXPECT_EQ(K.size(), annihilator_size(*F, spec, 5));
    EXPECT_EQ(annihilator_size(*F, spec, 5) * subgroup_size(*F, spec, 5), 162u);
  }
}

TEST(Decompose, MatchesOverF9) {
  auto F = FieldTower::build(3, 2, 1).fq_ptr();
  auto K = brute_subgroup(*F, 4, true);
  std::mt19937_64 g(5);
  for (int it = 0; it < 500; ++it) {
    std::vector<std::uint32_t> c(4);
    for (auto& x : c) x = static_cast<std::uint32_t>(g() % 9);
    if (!c[0]) c[0] = 1;
    if (it % 2) c = *std::next(K.begin(), static_cast<long>(g() % K.size()));
    auto w = k_membership(*F, PolyFq(c), 4, true);
    EXPECT_EQ(w.member, K.count(c) > 0);
    if (w.member) {
      EXPECT_TRUE(verify_witness(*F, PolyFq(c), 4, w));
    }
  }
}

TEST(Eta, SubgroupCountMatchesEnumeration) {
  auto F = Field::prime(3);
  for (bool even : {true, false}) {
    auto K = brute_subgroup(*F, 6, even);
    std::uint64_t direct = 0;
    for (const auto& h : enumerate_irreducibles(*F, 4)) {
      auto c = h.c;
      c.resize(6, 0);
      if (K.count(c)) ++direct;
    }
    SubgroupSpec spec{even ? SubgroupKind::odd_f : SubgroupKind::p_torsion_all, 5};
    EXPECT_EQ(eta_subgroup(*F, spec, 4, 6), direct);
    // H^3 is trivial, so every irreducible other than x counts
    EXPECT_EQ(eta_subgroup(*F, spec, 1, 6, 3), 2u);
  }
}

TEST(DirProp, PTorsionMatchesPropIrr) {
  auto F = Field::prime(3);
  for (int r = 1; r <= 7; ++r)
    EXPECT_EQ(dirprop_average(*F, {SubgroupKind::p_torsion_all, 4}, r), prop_irr_oracle(*F, 4, r)) << r;
  auto F5 = Field::prime(5);
  for (int r = 1; r <= 5; ++r)
    EXPECT_EQ(dirprop_average(*F5, {SubgroupKind::p_torsion_all, 3}, r), prop_irr_oracle(*F5, 3, r)) << r;
}

TEST(DirProp, OddFamilyMatchesBruteForce) {
  auto F = Field::prime(3);
  auto sw = sweep_family({FamilyKind::odd, 3, 1, 7}, 3);
  EXPECT_EQ(sw.members, 18u);
  for (int r = 1; r <= 3; ++r)
    for (std::uint32_t a = 1; a < 3; ++a)
      EXPECT_EQ(family_average_trace(sw, a, r), dirprop_average(*F, {SubgroupKind::odd_f, 7}, r)) << r;
  auto F5 = Field::prime(5);
  auto sw5 = sweep_family({FamilyKind::odd, 5, 1, 3}, 3);
  for (int r = 1; r <= 3; ++r)
    EXPECT_EQ(family_average_trace(sw5, 1, r), dirprop_average(*F5, {SubgroupKind::odd_f, 3}, r)) << r;
}

TEST(DirProp, PrimitiveShare) {
  for (std::uint32_t p : {3u, 5u}) {
    auto F = Field::prime(p);
    for (std::uint32_t d : {3u, 7u, 9u}) {
      if (d % p == 0) continue;
      SubgroupSpec spec{SubgroupKind::odd_f, d};
      const auto H = subgroup_size(*F, spec, d + 1), Hd = subgroup_size(*F, spec, d);
      EXPECT_EQ(H * (p - 1), (H - Hd) * p);
    }
  }
}

TEST(Probe, NoCounterexamplesInProvenRange) {
  auto F = Field::prime(3);
  auto res = niceconj_probe(*F, 20, 4);
  ASSERT_EQ(res.size(), 4u);
  for (const auto& pd : res) {
    EXPECT_TRUE(pd.counterexamples.empty()) << pd.r;
    EXPECT_EQ(pd.members, pd.even_members);
  }
  // odd r: an even polynomial has even degree
  EXPECT_EQ(res[0].members, 0u);
  EXPECT_THROW(niceconj_probe(*F, 8, 2), InvalidParameter);
  EXPECT_THROW(niceconj_probe(*Field::prime(2), 40, 2), InvalidParameter);
}

TEST(Probe, EvenIrreducibleIsMember) {
  auto F = Field::prime(3);
  for (const auto& h : enumerate_irreducibles(*F, 4)) {
    bool even = h.coeff(1) == 0 && h.coeff(3) == 0;
    if (even) {
      EXPECT_TRUE(k_membership(*F, h, 30).member);
    }
  }
}
