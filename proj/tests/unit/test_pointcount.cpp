#include "asz/pointcount.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asz;

TEST(PointCount, Examples) {
  auto t2 = FieldTower::build(2, 1, 1);
  EXPECT_EQ(count_trace_zeros(PolyFq({0, 1, 1}), t2), 2u);
  EXPECT_EQ(count_trace_zeros(PolyFq({1, 1, 1}), t2), 0u);
  EXPECT_EQ(count_trace_zeros(PolyFq({0, 1}), FieldTower::build(3, 1, 1)), 1u);
}

TEST(PointCount, ExhaustiveExample) {
  auto h = exact_distribution(2, 1, 2, 1);
  EXPECT_EQ(h.total, 4u);
  EXPECT_TRUE(h.exhaustive);
  std::map<std::uint64_t, std::uint64_t> want{{0, 1}, {1, 2}, {2, 1}};
  EXPECT_EQ(h.freq, want);
}

TEST(Model, Examples) {
  auto m = model_distribution(2, 1, 1, true);
  ASSERT_EQ(m.pmf_exact.size(), 3u);
  EXPECT_EQ(m.pmf_exact[0], BigRational(1, 4));
  EXPECT_EQ(m.pmf_exact[1], BigRational(1, 2));
  EXPECT_EQ(m.pmf_exact[2], BigRational(1, 4));
  EXPECT_EQ(model_mean(2, 1, 2), BigRational(3));
  EXPECT_EQ(model_distribution(2, 1, 2, true).mean_exact, BigRational(3));
  // r = 1: Binomial(q, 1/p)
  auto b = model_distribution(3, 2, 1, true);
  EXPECT_EQ(b.mean_exact, BigRational(3));
  EXPECT_EQ(b.variance_exact, BigRational(2));
}

TEST(Model, MeanFormula) {
  for (auto [p, n, r] : {std::tuple{2u, 1u, 2u}, std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 3u}, std::tuple{3u, 1u, 2u},
                         std::tuple{5u, 1u, 2u}, std::tuple{2u, 2u, 2u}}) {
    auto m = model_distribution(p, n, r, true);
    BigRational total = 0, mean = 0;
    for (std::size_t v = 0; v < m.pmf_exact.size(); ++v) {
      total += m.pmf_exact[v];
      mean += m.pmf_exact[v] * v;
    }
    EXPECT_EQ(total, BigRational(1));
    EXPECT_EQ(mean, model_mean(p, n, r));
    EXPECT_EQ(m.mean_exact, mean);
    EXPECT_NEAR(m.mean, static_cast<double>(mean), 1e-12);
  }
}

TEST(Model, ExhaustiveHistogramsMatch) {
  for (auto [p, n, r, d] : {std::tuple{2u, 1u, 1u, 2u}, std::tuple{2u, 1u, 1u, 3u}, std::tuple{2u, 1u, 2u, 4u},
                            std::tuple{3u, 1u, 1u, 3u}, std::tuple{2u, 1u, 2u, 5u}}) {
    auto h = exact_distribution(p, n, d, r);
    EXPECT_EQ(h.total, static_cast<std::uint64_t>(std::pow(p, n * d)));
    ASSERT_TRUE(model_applicable(h.q(), d, r));
    EXPECT_TRUE(matches_model(h, model_distribution(p, n, r, true))) << p << " " << r << " " << d;
  }
  EXPECT_FALSE(model_applicable(2, 2, 2));
  EXPECT_FALSE(model_applicable(3, 8, 2));
  // below the proven range the law can differ: d = 1 puts all mass on one value
  EXPECT_FALSE(matches_model(exact_distribution(2, 1, 1, 1), model_distribution(2, 1, 1, true)));
}

TEST(Weil, BoundHoldsWhenApplicable) {
  auto h = exact_distribution(3, 1, 4, 2);
  auto w = weil_check(h);
  EXPECT_TRUE(w.applicable);
  EXPECT_TRUE(w.ok);
  EXPECT_LE(w.worst_ratio, 1.0);
  EXPECT_FALSE(weil_check(exact_distribution(3, 1, 3, 1)).applicable);
}

TEST(Sampling, AgreesWithExhaustive) {
  auto ex = exact_distribution(3, 1, 5, 1);
  auto sm = sampled_distribution(3, 1, 5, 1, 20000, 4);
  EXPECT_FALSE(sm.exhaustive);
  EXPECT_EQ(sm.total, 20000u);
  for (const auto& [v, c] : ex.freq) {
    const double pr = static_cast<double>(c) / static_cast<double>(ex.total);
    const double mean = pr * 20000, sd = std::sqrt(20000 * pr * (1 - pr));
    const double got = sm.freq.count(v) ? static_cast<double>(sm.freq.at(v)) : 0.0;
    EXPECT_LE(std::fabs(got - mean), 5 * sd + 1e-9) << v;
  }
  auto a = sampled_distribution(3, 1, 5, 1, 500, 9, kDefaultCap, 1);
  auto b = sampled_distribution(3, 1, 5, 1, 500, 9, kDefaultCap, 4);
  EXPECT_EQ(a.freq, b.freq);
}

TEST(PointHistogram, ExhaustiveSwitch) {
  EXPECT_TRUE(point_histogram(2, 1, 16, 1, 100, 1).exhaustive);
  EXPECT_FALSE(point_histogram(2, 1, 17, 1, 100, 1).exhaustive);
}

TEST(ChiSquare, PerfectFitAndMerging) {
  std::vector<double> prob{0.25, 0.5, 0.25};
  auto c = chi_square({250, 500, 250}, prob);
  EXPECT_NEAR(c.stat, 0, 1e-12);
  EXPECT_EQ(c.dof, 2);
  EXPECT_NEAR(c.p_value, 1, 1e-12);
  // the tail bins are too small and get merged
  auto m = chi_square({2, 4, 2}, prob);
  EXPECT_LT(m.bins, 3u);
  auto bad = chi_square({500, 0, 500}, prob);
  EXPECT_LT(bad.p_value, 1e-10);
}

TEST(Diagnostics, RegimeValidation) {
  auto h = exact_distribution(3, 1, 3, 1);
  EXPECT_THROW(convergence_diagnostics(Regime::gaussian_p2_even, h), InvalidParameter);
  EXPECT_EQ(parse_regime("t2"), Regime::poisson);
  EXPECT_EQ(parse_regime("t3ii"), Regime::gaussian_p2_even);
  EXPECT_THROW(parse_regime("t9"), InvalidParameter);
  auto dg = convergence_diagnostics(Regime::exact, h);
  EXPECT_NEAR(dg.moments[0], 1.0, 1e-12);
}

TEST(Diagnostics, PoissonSmall) {
  auto h = sampled_distribution(31, 1, 31, 1, 4000, 2);
  auto dg = convergence_diagnostics(Regime::poisson, h);
  EXPECT_EQ(dg.target[0], 1);
  EXPECT_EQ(dg.target[1], 2);
  EXPECT_EQ(dg.target[2], 5);
  EXPECT_LT(std::fabs(dg.moments[0] - 1), 5 * dg.moment_err[0]);
  EXPECT_GT(dg.p_value, 1e-4);
}
