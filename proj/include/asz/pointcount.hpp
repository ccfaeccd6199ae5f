#pragma once

#include "asz/field.hpp"
#include "asz/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace asz {

using BigRational = boost::multiprecision::cpp_rational;

// N(f) = #{alpha in F_{q^r} : Tr_{q^r/p} f(alpha) = 0}; the curve has p N + 1 points
std::uint64_t count_trace_zeros(const PolyFq& f, const FieldTower& tower);

struct CountHistogram {
  std::uint32_t p = 0, n = 1, d = 0, r = 1;
  std::map<std::uint64_t, std::uint64_t> freq;
  std::uint64_t total = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;

  std::uint64_t q() const;
};

// every monic f of degree d over F_q
CountHistogram exact_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                                  std::uint64_t cap = kDefaultCap, int jobs = 1);
// uniform monic f of degree d, one stream per sample index
CountHistogram sampled_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                                    std::uint64_t samples, std::uint64_t seed, std::uint64_t cap = kDefaultCap,
                                    int jobs = 1);

// sum over e | r with (r/e, p) = 1 of e Bin(pi(e), 1/p), shifted by q^{r/p} when p | r
struct ModelDistribution {
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::uint32_t r = 1;
  std::vector<double> pmf;            // index = value
  std::vector<BigRational> pmf_exact; // empty unless requested
  BigRational mean_exact;
  BigRational variance_exact;
  double mean = 0;
  double variance = 0;

  double prob(std::uint64_t v) const { return v < pmf.size() ? pmf[v] : 0.0; }
};

ModelDistribution model_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t r, bool exact = false);
// q^r/p + (1 - 1/p) q^{r/p} [p | r]
BigRational model_mean(std::uint32_t p, std::uint32_t n, std::uint32_t r);

// the model is proven only for d >= q^r
bool model_applicable(std::uint64_t q, std::uint32_t d, std::uint32_t r);
// frequencies / total equal the exact PMF at every value
bool matches_model(const CountHistogram& h, const ModelDistribution& m);

struct WeilCheck {
  bool applicable = false;  // needs p !| d
  bool ok = true;
  double worst_ratio = 0;   // max |p N - q^r| / (2 g q^{r/2})
};
WeilCheck weil_check(const CountHistogram& h);

enum class Regime { exact, poisson, gaussian_fixed_p, gaussian_p2_even, gaussian_growing_p };
std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

// the centering and scaling of the matching limit law; identity for poisson/exact
double standardize(Regime reg, std::uint32_t p, std::uint64_t q, std::uint32_t r, double N);

struct Diagnostics {
  Regime regime = Regime::exact;
  bool exhaustive = true;
  std::uint64_t total = 0;
  std::array<double, 3> moments{};  // E Z, E Z^2, E Z^3
  std::array<double, 3> moment_err{};
  std::array<double, 3> target{};
  double chi2 = 0;
  int dof = 0;
  double p_value = 1;
  std::size_t bins = 0;
};

// pearson statistic after merging bins with expected count below 5 into neighbours
struct ChiSquare {
  double stat = 0;
  int dof = 0;
  double p_value = 1;
  std::size_t bins = 0;
};
ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob);

Diagnostics convergence_diagnostics(Regime reg, const CountHistogram& h);

// histogram for the given parameters: exhaustive when q^d <= 2^16, sampled otherwise
CountHistogram point_histogram(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                               std::uint64_t samples, std::uint64_t seed, std::uint64_t cap = kDefaultCap,
                               int jobs = 1);

}  // namespace asz
