#pragma once

#include "asz/exact.hpp"
#include "asz/families.hpp"
#include "asz/field.hpp"
#include "asz/sweep.hpp"
#include "asz/windows.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace asz {

// 1 if p | r else 0
inline int e_pr(std::uint32_t p, std::int64_t r) { return r % static_cast<std::int64_t>(p) == 0 ? 1 : 0; }

// A family average with its exact value, floating view and closed-form prediction.
struct MomentReport {
  FamilySpec spec;
  std::uint32_t a = 1;
  int r = 0;
  int s = 0;     // 0 for single traces
  int sign = 0;  // +1 for M^{r,s}, -1 for M^{r,-s}, 0 for M^r
  ExactScaled exact;
  double value = 0;
  std::optional<ExactScaled> oracle;
  double oracle_value = 0;
  double abs_error = 0;
  bool exact_match = false;
  double error_scale = 0;  // size of the error term (implied constant 1)
};

// closed form for r < d: -q^{-r/2} (e q^{r/p} - e + 1)
ExactScaled corollary_value(std::uint32_t p, std::uint32_t n, int r);

struct EtaCounts {
  std::uint32_t d = 0;
  std::uint32_t s = 0;
  std::uint64_t eta = 0;   // irreducible h of degree s with c_{s-k} = 0 for 1 <= k < d, p !| k
  std::uint64_t eta0 = 0;  // additionally c_{s-d} = 0; zero when s = d
};
EtaCounts eta_counts(const Field& fq, std::uint32_t d, std::uint32_t s, std::uint64_t cap = kDefaultCap);

// exact M_d^r for any r >= 1 from counts of irreducibles
ExactScaled prop_irr_oracle(const Field& fq, std::uint32_t d, int r, std::uint64_t cap = kDefaultCap);

// Pair average M^{r,-s} (sign -1) or M^{r,s} (sign +1) for r + s < d, counting only
// minimal polynomials of nonzero elements in the conjugate-pair term.
ExactScaled mdrs1_oracle(std::uint32_t p, std::uint32_t n, int r, int s, int sign);

// exact family averages from a sweep; negative indices mean conjugates
ExactScaled family_average_trace(const SweepResult& sw, std::uint32_t a, int r);
ExactScaled family_average_pair(const SweepResult& sw, std::uint32_t a, int r, int s);

MomentReport avg_trace(const SweepResult& sw, std::uint32_t a, int r, const Field* fq = nullptr,
                       std::uint64_t cap = kDefaultCap);
MomentReport avg_pair(const SweepResult& sw, std::uint32_t a, int r, int s, int sign);

struct WindowStat {
  std::vector<double> per_f_fourier;  // from exact trace powers
  std::vector<double> per_f_zero;     // from zeros, when requested
  double average_per_f = 0;           // mean of per_f_zero when present, else of per_f_fourier
  double fourier_exact_average = 0;   // exact M_d^r substituted into the expansion
  double prediction = 0;              // Vhat(0)
  double max_route_diff = 0;          // max over f of |zero - fourier|, 0 without zeros
  std::uint32_t d = 0;
};

// one-level statistic at scale d; the sweep must reach r = max(d - 1, 2ad)
WindowStat window_stat(const SweepResult& sw, const Window& w, std::uint32_t a, double theta,
                       bool zero_side, int jobs = 1);

struct TwoLevelStat {
  double empirical = 0;        // mean over f of sum_{j != k} v1(theta_j - theta) v2(theta_k - theta)
  double fourier_exact = 0;    // the same average from exact M^{r,s}, M^r
  double limit_prediction = 0; // Vhat(0,0) - int Vhat(s,-s) K(s) ds
  double unitary_finite = 0;   // U(N) expectation at N = d - 1
  double max_route_diff = 0;   // per f, zero side vs. Fourier side
  std::uint32_t N = 0;
};

// two-level statistic with product window at scale N = d - 1; needs a1 + a2 <= 1/2
TwoLevelStat two_level_stat(const SweepResult& sw, const Window& w1, const Window& w2, std::uint32_t a,
                            double theta, int jobs = 1);

}  // namespace asz
