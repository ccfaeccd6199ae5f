#include "asz/families.hpp"
#include "asz/lfunction.hpp"
#include "asz/sweep.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace asz;

namespace {

CycloElem integer(std::uint32_t p, std::int64_t v) { return CycloElem::integer(p, v); }

}  // namespace

TEST(CharSum, Examples) {
  EXPECT_TRUE(char_sum(PolyFq({0, 1}), 1, FieldTower::build(3, 1, 1)).is_zero());
  EXPECT_EQ(char_sum(PolyFq({0, 1, 0, 1}), 1, FieldTower::build(2, 1, 1)), integer(2, 2));
  EXPECT_TRUE(char_sum(PolyFq({0, 1, 0, 1}), 1, FieldTower::build(2, 1, 2)).is_zero());
}

TEST(CharSum, ConjugateCharacterConjugates) {
  auto t = FieldTower::build(5, 1, 2);
  PolyFq f({0, 3, 1, 0, 2});
  for (std::uint32_t a = 1; a < 5; ++a) EXPECT_EQ(char_sum(f, 5 - a, t), char_sum(f, a, t).conj());
}

TEST(TracePower, Examples) {
  auto S1 = char_sum(PolyFq({0, 1, 0, 1}), 1, FieldTower::build(2, 1, 1));
  auto T1 = trace_power_exact(S1, 1);
  EXPECT_NEAR(T1.real(2), -std::sqrt(2.0), 1e-15);
  EXPECT_EQ(T1.half_power, -1);

  auto L = l_polynomial(PolyFq({0, 1}), 1, 2, 1);
  EXPECT_EQ(L.degree(), 0);
  auto zs = zeros(L);
  EXPECT_TRUE(zs.rho.empty());
  EXPECT_EQ(trace_power(zs, 3), std::complex<double>(0));
}

TEST(LPoly, Examples) {
  auto L = l_polynomial(PolyFq({0, 1, 0, 1}), 1, 2, 1);
  ASSERT_EQ(L.c.size(), 3u);
  EXPECT_EQ(L.c[0], integer(2, 1));
  EXPECT_EQ(L.c[1], integer(2, 2));
  EXPECT_EQ(L.c[2], integer(2, 2));
}

TEST(LPoly, ConjugateCharacter) {
  for (const auto& f : enumerate({FamilyKind::full, 5, 1, 3})) {
    auto L1 = l_polynomial(f, 1, 5, 1), L4 = l_polynomial(f, 4, 5, 1);
    for (std::size_t k = 0; k < L1.c.size(); ++k) EXPECT_EQ(L4.c[k], L1.c[k].conj());
  }
}

TEST(LPoly, ProductOverCharactersIsRational) {
  // prod over a of L_{f, psi_a} lies in Z[z]
  for (const auto& f : enumerate({FamilyKind::full, 3, 1, 4})) {
    std::vector<CycloElem> prod{integer(3, 1)};
    for (std::uint32_t a = 1; a < 3; ++a) {
      auto L = l_polynomial(f, a, 3, 1);
      std::vector<CycloElem> next(prod.size() + L.c.size() - 1, CycloElem::zero(3));
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j < L.c.size(); ++j) next[i + j] += prod[i] * L.c[j];
      prod = next;
    }
    for (const auto& c : prod) {
      EXPECT_TRUE(c.is_rational());
      EXPECT_TRUE(c.is_integral());
    }
  }
}

TEST(LPoly, ArtinSchreierEquivalentPolynomialsShareL) {
  // g = f + a (x^{kp} - x^k) has the same L-function
  auto F = Field::prime(3);
  std::mt19937_64 g(1);
  auto family = enumerate({FamilyKind::full, 3, 1, 4});
  for (int it = 0; it < 20; ++it) {
    PolyFq f = family[g() % family.size()];
    std::uint32_t a = 1 + static_cast<std::uint32_t>(g() % 2);
    std::vector<std::uint32_t> c = f.c;
    c.resize(5, 0);
    // k = 1: x^3 - x
    c[3] = F->add(c[3], a);
    c[1] = F->sub(c[1], a);
    PolyFq h(c);
    for (std::uint32_t r = 1; r <= 4; ++r) {
      auto t = FieldTower::build(3, 1, r);
      EXPECT_EQ(char_sum(f, 1, t), char_sum(h, 1, t));
    }
  }
}

TEST(Zeros, QuadraticExample) {
  auto zs = zeros(l_polynomial(PolyFq({0, 1, 0, 1}), 1, 2, 1));
  ASSERT_EQ(zs.z.size(), 2u);
  for (auto z : zs.z) EXPECT_NEAR(std::abs(z), std::sqrt(0.5), 1e-14);
  // rho = 1/(sqrt 2 z) with z = (-1 +- i)/2
  EXPECT_NEAR(zs.theta[0], 3 * std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(zs.theta[1], 5 * std::numbers::pi / 4, 1e-12);
  EXPECT_TRUE(zs.rh_ok);
  EXPECT_NEAR(trace_power(zs, 1).real(), -std::sqrt(2.0), 1e-12);
}

TEST(Zeros, DoubleRootReportedTwice) {
  // (1 - sqrt(q) z)^2 with q = 4: 1 - 4z + 4z^2
  std::vector<std::complex<long double>> c{1.0L, -4.0L, 4.0L};
  auto zs = zeros_of(c, 4.0);
  ASSERT_EQ(zs.z.size(), 2u);
  EXPECT_NEAR(std::abs(zs.z[0] - 0.5), 0, 1e-7);
  EXPECT_NEAR(std::abs(zs.z[1] - 0.5), 0, 1e-7);
  EXPECT_TRUE(zs.rh_ok);
}

TEST(Zeros, ExhaustiveRhAndTraceRoutesAgree) {
  FamilySpec spec{FamilyKind::full, 3, 1, 4};
  auto sw = sweep_family(spec, 3);
  for (std::uint64_t m = 0; m < sw.members; ++m)
    for (std::uint32_t a = 1; a < 3; ++a) {
      auto sums = char_sums(sw, m, a, 3);
      auto zs = zeros(l_polynomial_from_sums(3, 3, 4, sums));
      ASSERT_TRUE(zs.rh_ok);
      EXPECT_LT(zs.max_residual, 1e-10);
      for (int r = 1; r <= 3; ++r) {
        auto exact = trace_power_exact(sums[static_cast<std::size_t>(r - 1)], r).to_complex(3);
        EXPECT_LT(std::abs(trace_power(zs, r) - exact), 1e-8);
        EXPECT_LT(std::abs(trace_power(zs, -r) - std::conj(exact)), 1e-8);
      }
    }
}

TEST(Zeros, ConstantShiftRotatesZeros) {
  // zeros of f + c are psi(c) times the zeros of f
  auto F = Field::prime(5);
  for (const auto& f : enumerate({FamilyKind::full, 5, 1, 3})) {
    auto zf = zeros(l_polynomial(f, 1, 5, 1));
    for (std::uint32_t c = 1; c < 5; ++c) {
      std::vector<std::uint32_t> g = f.c;
      g[0] = c;
      auto zg = zeros(l_polynomial(PolyFq(g), 1, 5, 1));
      auto rot = root_of_unity(5, static_cast<std::int64_t>(c));
      for (auto rho : zf.rho) {
        double best = 1e9;
        for (auto s : zg.rho) best = std::min(best, std::abs(s - rot * rho));
        EXPECT_LT(best, 1e-8);
      }
    }
  }
}

TEST(LPoly, DegreeIsDMinusOne) {
  for (const auto& f : enumerate({FamilyKind::full, 2, 1, 5})) {
    auto L = l_polynomial(f, 1, 2, 1);
    EXPECT_EQ(L.degree(), 4);
    EXPECT_FALSE(L.c.back().is_zero());
  }
}
