#include "asz/pointcount.hpp"

#include "asz/errors.hpp"
#include "asz/rng.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace asz {

std::uint64_t CountHistogram::q() const {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < n; ++i) v *= p;
  return v;
}

std::uint64_t count_trace_zeros(const PolyFq& f, const FieldTower& tower) {
  const Field& L = tower.top();
  for (auto c : f.c)
    if (c >= tower.q()) throw LevelMismatch("coefficients must lie in F_q");
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < L.order(); ++a)
    if (L.trace_to_prime(poly_eval(L, f, static_cast<std::uint32_t>(a))) == 0) ++n;
  return n;
}

namespace {

void check_params(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r) {
  if (!is_prime(p)) throw InvalidParameter("p must be prime");
  if (n < 1 || d < 1 || r < 1) throw InvalidParameter("n, d, r must be >= 1");
}

std::uint64_t checked_power(std::uint64_t q, std::uint32_t e, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(v, q, &v) || v > cap) throw CapExceeded(what);
  return v;
}

CountHistogram merge(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                     const std::vector<std::uint64_t>& values) {
  CountHistogram h;
  h.p = p;
  h.n = n;
  h.d = d;
  h.r = r;
  for (auto v : values) ++h.freq[v];
  h.total = values.size();
  return h;
}

}  // namespace

CountHistogram exact_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                                  std::uint64_t cap, int jobs) {
  check_params(p, n, d, r);
  auto tower = FieldTower::build(p, n, r, cap);
  const std::uint64_t members = checked_power(tower.q(), d, cap, "q^d exceeds the cap");
  std::vector<std::uint64_t> values(members);
  const auto m = static_cast<std::int64_t>(members);
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs > 0 ? jobs : 1)
  for (std::int64_t i = 0; i < m; ++i)
    values[static_cast<std::size_t>(i)] =
        count_trace_zeros(monic_from_index(tower.fq(), d, static_cast<std::uint64_t>(i)), tower);
  return merge(p, n, d, r, values);
}

CountHistogram sampled_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                                    std::uint64_t samples, std::uint64_t seed, std::uint64_t cap, int jobs) {
  check_params(p, n, d, r);
  if (samples < 1) throw InvalidParameter("samples must be >= 1");
  auto tower = FieldTower::build(p, n, r, cap);
  const std::uint64_t q = tower.q();
  std::vector<std::uint64_t> values(samples);
  const auto m = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs > 0 ? jobs : 1)
  for (std::int64_t i = 0; i < m; ++i) {
    auto g = stream_engine(seed, static_cast<std::uint64_t>(i));
    std::vector<std::uint32_t> c(d + 1, 1);
    for (std::uint32_t j = 0; j < d; ++j) c[j] = static_cast<std::uint32_t>(uniform_below(g, q));
    values[static_cast<std::size_t>(i)] = count_trace_zeros(PolyFq(std::move(c)), tower);
  }
  auto h = merge(p, n, d, r, values);
  h.exhaustive = false;
  h.seed = seed;
  return h;
}

CountHistogram point_histogram(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                               std::uint64_t samples, std::uint64_t seed, std::uint64_t cap, int jobs) {
  check_params(p, n, d, r);
  const double log_size = d * n * std::log2(static_cast<double>(p));
  if (log_size <= 16.0 + 1e-9) return exact_distribution(p, n, d, r, cap, jobs);
  return sampled_distribution(p, n, d, r, samples, seed, cap, jobs);
}

BigRational model_mean(std::uint32_t p, std::uint32_t n, std::uint32_t r) {
  using boost::multiprecision::cpp_int;
  cpp_int q = boost::multiprecision::pow(cpp_int(p), n);
  BigRational mean = BigRational(boost::multiprecision::pow(q, r)) / p;
  if (r % p == 0) mean += BigRational(p - 1, p) * BigRational(boost::multiprecision::pow(q, r / p));
  return mean;
}

ModelDistribution model_distribution(std::uint32_t p, std::uint32_t n, std::uint32_t r, bool exact) {
  using boost::multiprecision::cpp_int;
  if (!is_prime(p)) throw InvalidParameter("p must be prime");
  if (n < 1 || r < 1) throw InvalidParameter("n, r must be >= 1");
  ModelDistribution m;
  m.p = p;
  m.r = r;
  m.q = checked_power(p, n, ~0ull, "q overflows");
  const std::uint64_t qr = checked_power(m.q, r, 1ull << 26, "q^r too large for the model");
  std::uint64_t shift = 0;
  if (r % p == 0) shift = checked_power(m.q, r / p, ~0ull, "overflow");

  std::vector<double> pmf{1.0};
  std::vector<BigRational> pmf_x{BigRational(1)};
  const double lp = std::log(1.0 / p), lq = std::log1p(-1.0 / p);
  BigRational var = 0;
  for (std::uint32_t e = 1; e <= r; ++e) {
    if (r % e || (r / e) % p == 0) continue;
    const std::uint64_t cnt = count_irreducibles(e, m.q);
    var += BigRational(cpp_int(e) * e * cnt) * BigRational(p - 1, cpp_int(p) * p);
    // e * Bin(cnt, 1/p)
    std::vector<double> block(cnt * e + 1, 0.0);
    for (std::uint64_t k = 0; k <= cnt; ++k) {
      double lc = std::lgamma(cnt + 1.0) - std::lgamma(k + 1.0) - std::lgamma(cnt - k + 1.0);
      block[k * e] = std::exp(lc + k * lp + (cnt - k) * lq);
    }
    std::vector<double> next(pmf.size() + block.size() - 1, 0.0);
    for (std::size_t i = 0; i < pmf.size(); ++i)
      if (pmf[i] != 0)
        for (std::size_t j = 0; j < block.size(); j += e) next[i + j] += pmf[i] * block[j];
    pmf.swap(next);
    if (exact) {
      std::vector<BigRational> bx(cnt * e + 1, BigRational(0));
      cpp_int choose = 1;
      const cpp_int pc = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(cnt));
      for (std::uint64_t k = 0; k <= cnt; ++k) {
        // C(cnt, k) (p - 1)^{cnt - k} / p^cnt
        bx[k * e] = BigRational(choose * boost::multiprecision::pow(cpp_int(p - 1), static_cast<unsigned>(cnt - k)), pc);
        choose = choose * (cnt - k) / (k + 1);
      }
      std::vector<BigRational> nx(pmf_x.size() + bx.size() - 1, BigRational(0));
      for (std::size_t i = 0; i < pmf_x.size(); ++i)
        if (pmf_x[i] != 0)
          for (std::size_t j = 0; j < bx.size(); j += e) nx[i + j] += pmf_x[i] * bx[j];
      pmf_x.swap(nx);
    }
  }
  if (shift) {
    pmf.insert(pmf.begin(), shift, 0.0);
    if (exact) pmf_x.insert(pmf_x.begin(), shift, BigRational(0));
  }
  if (pmf.size() > qr + 1) throw ArithmeticError("model support exceeds q^r");
  m.pmf = std::move(pmf);
  if (exact) m.pmf_exact = std::move(pmf_x);
  m.mean_exact = model_mean(p, n, r);
  m.variance_exact = var;
  m.mean = static_cast<double>(m.mean_exact);
  m.variance = static_cast<double>(var);
  return m;
}

bool model_applicable(std::uint64_t q, std::uint32_t d, std::uint32_t r) {
  long double qr = std::pow(static_cast<long double>(q), static_cast<long double>(r));
  return static_cast<long double>(d) >= qr;
}

bool matches_model(const CountHistogram& h, const ModelDistribution& m) {
  if (m.pmf_exact.empty()) throw InvalidParameter("model built without exact masses");
  for (std::size_t v = 0; v < m.pmf_exact.size(); ++v) {
    auto it = h.freq.find(v);
    BigRational got = it == h.freq.end() ? BigRational(0) : BigRational(it->second, h.total);
    if (got != m.pmf_exact[v]) return false;
  }
  for (const auto& [v, c] : h.freq)
    if (v >= m.pmf_exact.size() && c) return false;
  return true;
}

WeilCheck weil_check(const CountHistogram& h) {
  WeilCheck w;
  if (h.d % h.p == 0) return w;
  w.applicable = true;
  const double qr = std::pow(static_cast<double>(h.q()), h.r);
  const double g = (h.p - 1.0) * (h.d - 1.0) / 2.0;
  const double bound = 2.0 * g * std::pow(static_cast<double>(h.q()), h.r / 2.0);
  for (const auto& [N, c] : h.freq) {
    const double dev = std::abs(static_cast<double>(h.p) * static_cast<double>(N) - qr);
    if (bound == 0) {
      if (dev > 0.5) w.ok = false;
      continue;
    }
    w.worst_ratio = std::max(w.worst_ratio, dev / bound);
    if (dev > bound * (1 + 1e-12)) w.ok = false;
  }
  return w;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::exact: return "exact";
    case Regime::poisson: return "poisson";
    case Regime::gaussian_fixed_p: return "gaussian_fixed_p";
    case Regime::gaussian_p2_even: return "gaussian_p2_even";
    case Regime::gaussian_growing_p: return "gaussian_growing_p";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  if (s == "exact") return Regime::exact;
  if (s == "poisson" || s == "t2") return Regime::poisson;
  if (s == "gaussian_fixed_p" || s == "t3") return Regime::gaussian_fixed_p;
  if (s == "gaussian_p2_even" || s == "t3ii") return Regime::gaussian_p2_even;
  if (s == "gaussian_growing_p" || s == "t4") return Regime::gaussian_growing_p;
  throw InvalidParameter("unknown regime: " + s);
}

double standardize(Regime reg, std::uint32_t p, std::uint64_t q, std::uint32_t r, double N) {
  const double qd = static_cast<double>(q), pd = p, rd = r;
  const double qr = std::pow(qd, rd);
  switch (reg) {
    case Regime::exact:
    case Regime::poisson: return N;
    case Regime::gaussian_fixed_p:
      return std::sqrt(pd) / std::sqrt((1 - 1 / pd) * rd) * std::pow(qd, -rd / 2) * (N - qr / pd);
    case Regime::gaussian_p2_even:
      return 2 / std::sqrt(rd) * std::pow(qd, -rd / 2) * (N - qr / pd - 2 * std::pow(qd, rd / 2) / rd);
    case Regime::gaussian_growing_p:
      return std::sqrt(pd) / std::sqrt(rd) * std::pow(qd, -rd / 2) * (N - qr / pd);
  }
  return N;
}

ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob) {
  if (observed.size() != expected_prob.size() || observed.empty())
    throw InvalidParameter("chi-square needs matching nonempty bins");
  double total = 0;
  for (double o : observed) total += o;
  std::vector<double> o = observed, e;
  for (double pr : expected_prob) e.push_back(pr * total);
  // merge from the right tail, then from the left
  while (e.size() > 1 && e.back() < 5) {
    e[e.size() - 2] += e.back();
    o[o.size() - 2] += o.back();
    e.pop_back();
    o.pop_back();
  }
  while (e.size() > 1 && e.front() < 5) {
    e[1] += e[0];
    o[1] += o[0];
    e.erase(e.begin());
    o.erase(o.begin());
  }
  ChiSquare cs;
  cs.bins = e.size();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) cs.stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  cs.dof = static_cast<int>(e.size()) - 1;
  if (cs.dof >= 1) {
    boost::math::chi_squared dist(cs.dof);
    cs.p_value = boost::math::cdf(boost::math::complement(dist, cs.stat));
  }
  return cs;
}

Diagnostics convergence_diagnostics(Regime reg, const CountHistogram& h) {
  if (h.total == 0) throw InvalidParameter("empty histogram");
  if (reg == Regime::gaussian_p2_even && (h.p != 2 || h.r % 2))
    throw InvalidParameter("this regime needs p = 2 and r even");
  if (reg == Regime::gaussian_fixed_p && h.p == 2 && h.r % 2 == 0)
    throw InvalidParameter("p = 2 with r even uses the gaussian_p2_even regime");
  if (reg == Regime::poisson && (h.n != 1 || h.r != 1)) throw InvalidParameter("poisson regime needs n = r = 1");
  if (reg == Regime::gaussian_growing_p && h.n == 1 && h.r == 1)
    throw InvalidParameter("growing-p gaussian regime needs n > 1 or r > 1");
  Diagnostics out;
  out.regime = reg;
  out.exhaustive = h.exhaustive;
  out.total = h.total;
  const std::uint64_t q = h.q();
  const double tot = static_cast<double>(h.total);

  for (int k = 1; k <= 3; ++k) {
    double s = 0, s2 = 0;
    for (const auto& [N, c] : h.freq) {
      double z = std::pow(standardize(reg, h.p, q, h.r, static_cast<double>(N)), k);
      s += z * c;
      s2 += z * z * c;
    }
    double mean = s / tot;
    out.moments[k - 1] = mean;
    if (!h.exhaustive && h.total > 1)
      out.moment_err[k - 1] = std::sqrt(std::max(0.0, s2 / tot - mean * mean) / (tot - 1));
  }

  std::vector<double> obs, prob;
  if (reg == Regime::exact || reg == Regime::poisson) {
    std::vector<double> ref;
    if (reg == Regime::poisson) {
      out.target = {1.0, 2.0, 5.0};
      std::uint64_t vmax = std::max<std::uint64_t>(h.freq.rbegin()->first, 20);
      double pr = std::exp(-1.0), acc = 0;
      for (std::uint64_t v = 0; v <= vmax; ++v) {
        ref.push_back(pr);
        acc += pr;
        pr /= static_cast<double>(v + 1);
      }
      ref.back() += std::max(0.0, 1.0 - acc);
    } else {
      auto m = model_distribution(h.p, h.n, h.r);
      ref = m.pmf;
      std::array<double, 3> t{};
      for (std::size_t v = 0; v < ref.size(); ++v)
        for (int k = 0; k < 3; ++k) t[k] += std::pow(static_cast<double>(v), k + 1) * ref[v];
      out.target = t;
      if (ref.size() <= h.freq.rbegin()->first) ref.resize(h.freq.rbegin()->first + 1, 0.0);
    }
    obs.assign(ref.size(), 0.0);
    for (const auto& [N, c] : h.freq) obs[N] += static_cast<double>(c);
    prob = ref;
  } else {
    out.target = {0.0, 1.0, 0.0};
    const std::size_t k = static_cast<std::size_t>(std::ceil(std::log2(tot))) + 1;
    boost::math::normal nd;
    std::vector<double> edges;
    for (std::size_t i = 1; i < k; ++i) edges.push_back(boost::math::quantile(nd, static_cast<double>(i) / k));
    obs.assign(k, 0.0);
    prob.assign(k, 1.0 / static_cast<double>(k));
    for (const auto& [N, c] : h.freq) {
      double z = standardize(reg, h.p, q, h.r, static_cast<double>(N));
      auto bin = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), z) - edges.begin());
      obs[bin] += static_cast<double>(c);
    }
  }
  auto cs = chi_square(obs, prob);
  out.chi2 = cs.stat;
  out.dof = cs.dof;
  out.p_value = cs.p_value;
  out.bins = cs.bins;
  return out;
}

}  // namespace asz
