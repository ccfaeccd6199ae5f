#include "asz/lfunction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace asz {

std::vector<std::uint64_t> trace_value_counts(const PolyFq& f, const FieldTower& tower) {
  const Field& L = tower.top();
  std::vector<std::uint64_t> counts(tower.p(), 0);
  for (std::uint64_t a = 0; a < L.order(); ++a)
    ++counts[L.trace_to_prime(poly_eval(L, f, static_cast<std::uint32_t>(a)))];
  return counts;
}

CycloElem char_sum(const PolyFq& f, std::uint32_t a, const FieldTower& tower) {
  if (a % tower.p() == 0) throw InvalidParameter("trivial additive character");
  for (auto c : f.c)
    if (c >= tower.q()) throw LevelMismatch("coefficients must lie in F_q");
  return CycloElem::from_counts(tower.p(), trace_value_counts(f, tower), a);
}

CharSumVector char_sums(const PolyFq& f, std::uint32_t a, const std::vector<FieldTower>& towers,
                        std::uint32_t max_r) {
  if (towers.size() < max_r) throw InvalidParameter("not enough towers for the requested r");
  CharSumVector out{f, a, {}};
  for (std::uint32_t r = 1; r <= max_r; ++r) out.sums.push_back(char_sum(f, a, towers[r - 1]));
  return out;
}

std::vector<CycloElem> char_sums(const SweepResult& sweep, std::uint64_t member, std::uint32_t a,
                                 std::uint32_t max_r) {
  if (max_r > sweep.max_r) throw InvalidParameter("sweep does not reach the requested r");
  std::vector<CycloElem> out;
  out.reserve(max_r);
  for (std::uint32_t r = 1; r <= max_r; ++r)
    out.push_back(CycloElem::from_counts(sweep.p(), sweep.at(member, r), a));
  return out;
}

ExactScaled trace_power_exact(const CycloElem& s_r, int r) { return {-s_r, -r}; }

std::vector<std::complex<long double>> LPoly::complex_coeffs() const {
  std::vector<std::complex<long double>> out;
  for (const auto& x : c) out.push_back(x.embed_long());
  return out;
}

LPoly l_polynomial_from_sums(std::uint32_t p, std::uint64_t q, std::uint32_t d,
                             const std::vector<CycloElem>& sums) {
  if (d < 1) throw InvalidParameter("d must be >= 1");
  if (sums.size() + 1 < d) throw InvalidParameter("need S_1..S_{d-1}");
  LPoly L{p, q, d, {CycloElem::integer(p, 1)}};
  for (std::uint32_t k = 1; k < d; ++k) {
    CycloElem acc(p);
    for (std::uint32_t j = 1; j <= k; ++j) acc += sums[j - 1] * L.c[k - j];
    acc = acc.scaled(Rational(1, k));
    if (!acc.is_integral())
      throw ArithmeticError("non-integral L coefficient c_" + std::to_string(k) + " = " + acc.str());
    L.c.push_back(std::move(acc));
  }
  if (d > 1 && L.c.back().is_zero()) throw ArithmeticError("L-polynomial degree below d-1");
  return L;
}

LPoly l_polynomial(const PolyFq& f, std::uint32_t a, std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  const int d = f.degree();
  if (d < 1) throw InvalidParameter("deg f must be >= 1");
  if (d % static_cast<int>(p) == 0) throw InvalidParameter("l_polynomial requires gcd(d, p) = 1");
  auto base = FieldTower::build(p, n, 1, cap);
  if (d == 1) return l_polynomial_from_sums(p, base.q(), 1, {});
  std::vector<FieldTower> towers{base};
  for (int r = 2; r < d; ++r) towers.push_back(FieldTower::over(base.fq_ptr(), static_cast<std::uint32_t>(r), cap));
  auto sums = char_sums(f, a, towers, static_cast<std::uint32_t>(d - 1)).sums;
  return l_polynomial_from_sums(p, base.q(), static_cast<std::uint32_t>(d), sums);
}

namespace {

using cld = std::complex<long double>;

// k-th derivative of sum_i b[i] w^{m-i} at w
cld eval_derivative(const std::vector<cld>& b, cld w, int k) {
  const int m = static_cast<int>(b.size()) - 1;
  cld acc = 0;
  for (int i = 0; i <= m - k; ++i) {
    int e = m - i;
    long double fall = 1;
    for (int j = 0; j < k; ++j) fall *= static_cast<long double>(e - j);
    acc = acc * w + b[static_cast<std::size_t>(i)] * fall;
  }
  return acc;
}

cld newton(const std::vector<cld>& b, cld w, int k, int iters) {
  long double best = std::abs(eval_derivative(b, w, k));
  for (int it = 0; it < iters; ++it) {
    cld f = eval_derivative(b, w, k);
    cld df = eval_derivative(b, w, k + 1);
    if (std::abs(df) == 0) break;
    cld next = w - f / df;
    long double r = std::abs(eval_derivative(b, next, k));
    if (!(r < best)) break;
    best = r;
    w = next;
  }
  return w;
}

}  // namespace

ZeroSet zeros_of(const std::vector<std::complex<long double>>& c, double q) {
  ZeroSet zs;
  const int m = static_cast<int>(c.size()) - 1;
  if (m <= 0) return zs;
  if (std::abs(c[0] - cld(1)) > 1e-12L) throw InvalidParameter("L-polynomial must have c_0 = 1");
  // rho are the roots of sum_k c_k q^{-k/2} w^{m-k}, a monic polynomial
  const long double sq = std::sqrt(static_cast<long double>(q));
  std::vector<cld> b(static_cast<std::size_t>(m) + 1);
  long double scale = 1;
  for (int k = 0; k <= m; ++k) {
    b[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] / scale;
    scale *= sq;
  }
  if (std::abs(b[static_cast<std::size_t>(m)]) == 0) throw ArithmeticError("L-polynomial degree shortfall");

  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    auto v = -b[static_cast<std::size_t>(j) + 1];
    C(0, j) = std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw ArithmeticError("eigenvalue solver did not converge");

  std::vector<cld> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = cld(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());

  // simple polish first
  std::vector<cld> polished(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) polished[i] = newton(b, w[i], 0, 8);

  // near-coincident roots: replace by the mean refined on the (m-1)-th derivative,
  // kept only if that lowers the worst residual of the group
  std::vector<int> group(w.size(), -1);
  int ng = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = ng;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < w.size(); ++j)
        if (group[j] < 0 && std::abs(w[u] - w[j]) < 1e-4L) {
          group[j] = ng;
          stack.push_back(j);
        }
    }
    ++ng;
  }
  for (int g = 0; g < ng; ++g) {
    std::vector<std::size_t> mem;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (group[i] == g) mem.push_back(i);
    if (mem.size() < 2) continue;
    cld mean = 0;
    for (auto i : mem) mean += w[i];
    mean /= static_cast<long double>(mem.size());
    cld c0 = newton(b, mean, static_cast<int>(mem.size()) - 1, 30);
    long double worst = 0;
    for (auto i : mem) worst = std::max(worst, std::abs(eval_derivative(b, polished[i], 0)));
    if (std::abs(eval_derivative(b, c0, 0)) <= worst)
      for (auto i : mem) polished[i] = c0;
  }

  long double cmax = 0;
  for (const auto& x : c) cmax = std::max(cmax, std::abs(x));
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> th(w.size());
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < w.size(); ++i) {
    long double t = std::arg(polished[i]);
    if (t < 0) t += two_pi;
    if (t >= two_pi) t -= two_pi;
    th[i] = static_cast<double>(t);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return th[x] < th[y]; });
  for (auto i : order) {
    cld rho = polished[i];
    cld z = 1.0L / (sq * rho);
    cld val = 0;
    for (int k = m; k >= 0; --k) val = val * z + c[static_cast<std::size_t>(k)];
    zs.max_residual = std::max(zs.max_residual, static_cast<double>(std::abs(val) / cmax));
    double dev = static_cast<double>(std::fabs(std::abs(rho) - 1.0L));
    zs.max_rh_deviation = std::max(zs.max_rh_deviation, dev);
    zs.z.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    zs.rho.emplace_back(static_cast<double>(rho.real()), static_cast<double>(rho.imag()));
    zs.theta.push_back(th[i]);
  }
  zs.rh_ok = zs.max_rh_deviation <= kRhTolerance;
  if (zs.max_residual > 1e-10) throw ArithmeticError("root finder residual " + std::to_string(zs.max_residual));
  return zs;
}

ZeroSet zeros(const LPoly& L) { return zeros_of(L.complex_coeffs(), static_cast<double>(L.q)); }

std::complex<double> trace_power(const ZeroSet& zs, int r) {
  std::complex<long double> s = 0;
  for (const auto& rho : zs.rho) {
    long double a = std::pow(static_cast<long double>(std::abs(rho)), static_cast<long double>(r));
    long double t = static_cast<long double>(r) * std::arg(std::complex<long double>(rho.real(), rho.imag()));
    s += std::polar(a, t);
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace asz
