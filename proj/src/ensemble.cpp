#include "asz/ensemble.hpp"

#include "asz/lfunction.hpp"
#include "asz/poly.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace asz {

namespace {

std::int64_t q_of(std::uint32_t p, std::uint32_t n) { return checked_pow(p, n); }

// q^{r/p} for p | r
Rational q_root_power(std::uint32_t p, std::uint32_t n, int r) {
  return Rational(checked_pow(p, static_cast<unsigned>(n * (r / static_cast<int>(p)))));
}

std::vector<std::complex<double>> zeta_table(std::uint32_t p, std::uint32_t a) {
  std::vector<std::complex<double>> z(p);
  for (std::uint32_t k = 0; k < p; ++k) z[k] = root_of_unity(p, static_cast<std::int64_t>(a) * k);
  return z;
}

// T^r(f) for r >= 1 from one member's counts
std::complex<double> trace_power_float(const SweepResult& sw, std::uint64_t m, int r,
                                       const std::vector<std::complex<double>>& zt, double q) {
  auto c = sw.at(m, static_cast<std::uint32_t>(r));
  std::complex<double> s = 0;
  for (std::uint32_t k = 0; k < sw.p(); ++k) s += static_cast<double>(c[k]) * zt[k];
  return -s * std::pow(q, -0.5 * r);
}

// T^k for any integer k, with T^0 = N
std::complex<double> signed_trace(const std::vector<std::complex<double>>& T, int k, double N) {
  if (k == 0) return N;
  if (k > 0) return T[static_cast<std::size_t>(k)];
  return std::conj(T[static_cast<std::size_t>(-k)]);
}

int last_nonzero(const Window& w, int N) {
  int R = w.max_frequency(N);
  while (R > 0 && w.hat_at(R, N) == 0.0) --R;
  return R;
}

double periodized_for_zeros(const Window& w, double t, int N) {
  if (w.is_fejer()) {
    double m = 2.0 * w.a() * N;
    if (std::fabs(m - std::round(m)) < 1e-12) return w.periodized_closed(t, N);
  }
  return w.periodized(t, N);
}

ZeroSet member_zeros(const SweepResult& sw, std::uint64_t m, std::uint32_t a) {
  const std::uint32_t d = sw.spec.d;
  auto sums = char_sums(sw, m, a, d - 1);
  auto L = l_polynomial_from_sums(sw.p(), sw.spec.q(), d, sums);
  return zeros(L);
}

}  // namespace

ExactScaled corollary_value(std::uint32_t p, std::uint32_t n, int r) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  const int e = e_pr(p, r);
  Rational inner = e ? q_root_power(p, n, r) - Rational(e) + Rational(1) : Rational(1);
  return {CycloElem::integer(p, -inner), -r};
}

EtaCounts eta_counts(const Field& fq, std::uint32_t d, std::uint32_t s, std::uint64_t cap) {
  if (d < 1 || s < 1) throw InvalidParameter("eta counts need d, s >= 1");
  const std::uint32_t p = fq.p();
  EtaCounts out{d, s, 0, 0};
  for (const auto& h : enumerate_irreducibles(fq, s, cap)) {
    if (h.degree() == 1 && h.coeff(0) == 0) continue;  // h = x
    bool ok = true;
    for (std::uint32_t k = 1; k < d && k <= s; ++k)
      if (k % p != 0 && h.coeff(s - k) != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    ++out.eta;
    if (s > d && h.coeff(s - d) == 0) ++out.eta0;
  }
  return out;
}

ExactScaled prop_irr_oracle(const Field& fq, std::uint32_t d, int r, std::uint64_t cap) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  const std::uint32_t p = fq.p();
  const std::int64_t q = static_cast<std::int64_t>(fq.order());
  Rational sum = 0;
  for (int s = 1; s <= r; ++s) {
    if (r % s != 0 || (r / s) % static_cast<int>(p) == 0 || s < static_cast<int>(d)) continue;
    auto eta = eta_counts(fq, d, static_cast<std::uint32_t>(s), cap);
    sum += Rational(s) * (Rational(static_cast<std::int64_t>(eta.eta), q) - Rational(static_cast<std::int64_t>(eta.eta0)));
  }
  const int e = e_pr(p, r);
  Rational bracket = Rational(q, q - 1) * sum + Rational(e - 1);
  if (e) bracket -= q_root_power(p, fq.abs_degree(), r);
  return {CycloElem::integer(p, bracket), -r};
}

ExactScaled mdrs1_oracle(std::uint32_t p, std::uint32_t n, int r, int s, int sign) {
  if (r < 1 || s < 1) throw InvalidParameter("r, s must be >= 1");
  if (sign != 1 && sign != -1) throw InvalidParameter("sign must be +1 or -1");
  const std::int64_t q = q_of(p, n);
  const int P = static_cast<int>(p);
  const int g = std::gcd(r, s);
  const int target = sign < 0 ? r - s : r + s;
  Rational bracket = 0;
  for (int m = 1; m <= g; ++m) {
    if (g % m != 0 || target % (m * P) != 0 || r % (m * P) == 0) continue;
    // nonzero elements only: x is not the minimal polynomial of a pair counted here
    std::int64_t pi = static_cast<std::int64_t>(count_irreducibles(static_cast<std::size_t>(m), static_cast<std::uint64_t>(q)));
    if (m == 1) pi -= 1;
    bracket += Rational(pi) * Rational(static_cast<std::int64_t>(m) * m);
  }
  const int er = e_pr(p, r), es = e_pr(p, s);
  if (er && es) bracket += q_root_power(p, n, r) * q_root_power(p, n, s);
  if (!er && es) bracket += q_root_power(p, n, s);
  if (er && !es) bracket += q_root_power(p, n, r);
  if (!er && !es) bracket += 1;
  return {CycloElem::integer(p, bracket), -(r + s)};
}

ExactScaled family_average_trace(const SweepResult& sw, std::uint32_t a, int r) {
  if (r == 0) throw InvalidParameter("use M^0 = d - 1 directly");
  const std::uint32_t ar = static_cast<std::uint32_t>(std::abs(r));
  if (ar > sw.max_r) throw InvalidParameter("sweep does not reach r = " + std::to_string(ar));
  CycloElem sum = CycloElem::from_counts(sw.p(), sw.total(ar), a);
  CycloElem v = (-sum).scaled(Rational(1, static_cast<std::int64_t>(sw.members)));
  if (r < 0) v = v.conj();
  return {v, -static_cast<int>(ar)};
}

ExactScaled family_average_pair(const SweepResult& sw, std::uint32_t a, int r, int s) {
  if (r == 0 || s == 0) throw InvalidParameter("pair indices must be nonzero");
  const std::uint32_t ar = static_cast<std::uint32_t>(std::abs(r)), as = static_cast<std::uint32_t>(std::abs(s));
  if (std::max(ar, as) > sw.max_r) throw InvalidParameter("sweep does not reach the pair indices");
  const std::uint32_t p = sw.p();
  std::vector<unsigned __int128> J(static_cast<std::size_t>(p) * p, 0);
  for (std::uint64_t m = 0; m < sw.members; ++m) {
    auto c = sw.at(m, ar);
    auto e = sw.at(m, as);
    for (std::uint32_t k = 0; k < p; ++k) {
      if (!c[k]) continue;
      for (std::uint32_t l = 0; l < p; ++l) J[k * p + l] += static_cast<unsigned __int128>(c[k]) * e[l];
    }
  }
  std::vector<std::int64_t> bins(p, 0);
  const std::int64_t er = r > 0 ? 1 : -1, es = s > 0 ? 1 : -1;
  for (std::uint32_t k = 0; k < p; ++k)
    for (std::uint32_t l = 0; l < p; ++l) {
      std::int64_t ex = (er * k + es * l) % static_cast<std::int64_t>(p);
      if (ex < 0) ex += p;
      unsigned __int128 v = J[k * p + l];
      if (v > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
        throw ArithmeticError("pair sum overflow");
      if (__builtin_add_overflow(bins[static_cast<std::size_t>(ex)], static_cast<std::int64_t>(v), &bins[static_cast<std::size_t>(ex)]))
        throw ArithmeticError("pair sum overflow");
    }
  // bins[ex] counts zeta^{a ex}
  CycloElem v = CycloElem::from_signed_counts(p, bins, a);
  v = v.scaled(Rational(1, static_cast<std::int64_t>(sw.members)));
  return {v, -static_cast<int>(ar + as)};
}

MomentReport avg_trace(const SweepResult& sw, std::uint32_t a, int r, const Field* fq, std::uint64_t cap) {
  MomentReport rep;
  rep.spec = sw.spec;
  rep.a = a;
  rep.r = r;
  rep.exact = family_average_trace(sw, a, r);
  const std::uint64_t q = sw.spec.q();
  rep.value = rep.exact.real(q);
  const std::uint32_t d = sw.spec.d;
  if (sw.spec.kind == FamilyKind::full) {
    if (r < static_cast<int>(d))
      rep.oracle = corollary_value(sw.p(), sw.spec.n, r);
    else if (fq)
      rep.oracle = prop_irr_oracle(*fq, d, r, cap);
  }
  if (rep.oracle) {
    rep.oracle_value = rep.oracle->real(q);
    rep.exact_match = rep.oracle->value == rep.exact.value && rep.oracle->half_power == rep.exact.half_power;
    rep.abs_error = std::fabs(rep.value - rep.oracle_value);
  }
  const double p = sw.p();
  rep.error_scale = r * std::pow(static_cast<double>(q), r / 2.0 - (1 - 1 / p) * d) + std::pow(static_cast<double>(q), -r / 2.0);
  return rep;
}

MomentReport avg_pair(const SweepResult& sw, std::uint32_t a, int r, int s, int sign) {
  MomentReport rep;
  rep.spec = sw.spec;
  rep.a = a;
  rep.r = r;
  rep.s = s;
  rep.sign = sign;
  rep.exact = family_average_pair(sw, a, r, sign * s);
  const std::uint64_t q = sw.spec.q();
  rep.value = rep.exact.real(q);
  if (sw.spec.kind == FamilyKind::full && r + s < static_cast<int>(sw.spec.d)) {
    rep.oracle = mdrs1_oracle(sw.p(), sw.spec.n, r, s, sign);
    rep.oracle_value = rep.oracle->real(q);
    rep.exact_match = rep.oracle->value == rep.exact.value && rep.oracle->half_power == rep.exact.half_power;
    rep.abs_error = std::fabs(rep.value - rep.oracle_value);
  }
  const double p = sw.p(), qd = static_cast<double>(q);
  const int hi = std::max(r, s);
  rep.error_scale = hi * std::pow(qd, -hi / 2.0) + std::pow(qd, (1 / p - 0.5) * (r + s));
  return rep;
}

WindowStat window_stat(const SweepResult& sw, const Window& w, std::uint32_t a, double theta, bool zero_side,
                       int jobs) {
  const std::uint32_t d = sw.spec.d;
  const double p = sw.p();
  if (!(w.support() < 2.0 - 2.0 / p)) throw InvalidParameter("window support violates 2a < 2 - 2/p");
  const int N = static_cast<int>(d);
  const int R = last_nonzero(w, N);
  if (static_cast<std::uint32_t>(R) > sw.max_r || (zero_side && sw.max_r + 1 < d))
    throw InvalidParameter("sweep too short for this window");
  const double q = static_cast<double>(sw.spec.q());

  WindowStat out;
  out.d = d;
  out.prediction = w.hat_at(0, N);
  const double c0 = (static_cast<double>(d) - 1) / d * w.hat_at(0, N);

  double fe = c0;
  for (int r = 1; r <= R; ++r) {
    double M = family_average_trace(sw, a, r).real(sw.spec.q());
    fe += 2.0 * w.hat_at(r, N) * std::cos(r * theta) * M / d;
  }
  out.fourier_exact_average = fe;

  const std::int64_t members = static_cast<std::int64_t>(sw.members);
  out.per_f_fourier.assign(sw.members, 0.0);
  if (zero_side) out.per_f_zero.assign(sw.members, 0.0);
  const auto zt = zeta_table(sw.p(), a);
  std::vector<double> hats(static_cast<std::size_t>(R) + 1);
  for (int r = 0; r <= R; ++r) hats[static_cast<std::size_t>(r)] = w.hat_at(r, N);

#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 16)
  for (std::int64_t m = 0; m < members; ++m) {
    const auto um = static_cast<std::uint64_t>(m);
    double s = c0;
    for (int r = 1; r <= R; ++r) {
      auto T = trace_power_float(sw, um, r, zt, q);
      s += 2.0 * hats[static_cast<std::size_t>(r)] * (std::polar(1.0, -r * theta) * T).real() / d;
    }
    out.per_f_fourier[um] = s;
    if (zero_side) {
      auto zs = member_zeros(sw, um, a);
      double z = 0;
      for (double th : zs.theta) z += periodized_for_zeros(w, th - theta, N);
      out.per_f_zero[um] = z;
    }
  }
  const auto& base = zero_side ? out.per_f_zero : out.per_f_fourier;
  double acc = 0;
  for (double v : base) acc += v;
  out.average_per_f = acc / static_cast<double>(sw.members);
  if (zero_side)
    for (std::size_t i = 0; i < base.size(); ++i)
      out.max_route_diff = std::max(out.max_route_diff, std::fabs(out.per_f_zero[i] - out.per_f_fourier[i]));
  return out;
}

TwoLevelStat two_level_stat(const SweepResult& sw, const Window& w1, const Window& w2, std::uint32_t a, double theta,
                            int jobs) {
  const std::uint32_t d = sw.spec.d;
  if (d < 3) throw InvalidParameter("two-level statistic needs d >= 3");
  if (w1.support() / 2 + w2.support() / 2 > 0.5 + 1e-15)
    throw InvalidParameter("product window violates a1 + a2 <= 1/2");
  if (sw.max_r + 1 < d) throw InvalidParameter("sweep must reach r = d - 1");
  const int N = static_cast<int>(d) - 1;
  const int R1 = last_nonzero(w1, N), R2 = last_nonzero(w2, N);
  if (R1 + R2 >= static_cast<int>(d)) throw InvalidParameter("window frequencies exceed the exact range");
  const std::uint64_t qi = sw.spec.q();
  const double q = static_cast<double>(qi);

  TwoLevelStat out;
  out.N = static_cast<std::uint32_t>(N);
  out.limit_prediction = two_level_limit(w1, w2);
  out.unitary_finite = two_level_unitary_exact(w1, w2, N);

  // exact side
  auto M1 = [&](int k) -> std::complex<double> {
    if (k == 0) return static_cast<double>(N);
    return family_average_trace(sw, a, k).to_complex(qi);
  };
  std::complex<double> acc = 0;
  for (int r = -R1; r <= R1; ++r) {
    const double h1 = w1.hat_at(r, N);
    if (h1 == 0) continue;
    for (int s = -R2; s <= R2; ++s) {
      const double h2 = w2.hat_at(s, N);
      if (h2 == 0) continue;
      std::complex<double> Mrs;
      if (r == 0 && s == 0)
        Mrs = static_cast<double>(N) * N;
      else if (r == 0)
        Mrs = static_cast<double>(N) * M1(s);
      else if (s == 0)
        Mrs = static_cast<double>(N) * M1(r);
      else
        Mrs = family_average_pair(sw, a, r, s).to_complex(qi);
      acc += h1 * h2 * std::polar(1.0, -(r + s) * theta) * (Mrs - M1(r + s));
    }
  }
  out.fourier_exact = acc.real() / (static_cast<double>(N) * N);

  const std::int64_t members = static_cast<std::int64_t>(sw.members);
  std::vector<double> zero_vals(sw.members), fourier_vals(sw.members);
  const auto zt = zeta_table(sw.p(), a);
  const int K = R1 + R2;
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 16)
  for (std::int64_t m = 0; m < members; ++m) {
    const auto um = static_cast<std::uint64_t>(m);
    auto zs = member_zeros(sw, um, a);
    double s1 = 0, s2 = 0, s12 = 0;
    for (double th : zs.theta) {
      double v1 = periodized_for_zeros(w1, th - theta, N), v2 = periodized_for_zeros(w2, th - theta, N);
      s1 += v1;
      s2 += v2;
      s12 += v1 * v2;
    }
    zero_vals[um] = s1 * s2 - s12;
    std::vector<std::complex<double>> T(static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= K; ++k) T[static_cast<std::size_t>(k)] = trace_power_float(sw, um, k, zt, q);
    std::complex<double> f = 0;
    for (int r = -R1; r <= R1; ++r)
      for (int s = -R2; s <= R2; ++s) {
        const double h = w1.hat_at(r, N) * w2.hat_at(s, N);
        if (h == 0) continue;
        f += h * std::polar(1.0, -(r + s) * theta) *
             (signed_trace(T, r, N) * signed_trace(T, s, N) - signed_trace(T, r + s, N));
      }
    fourier_vals[um] = f.real() / (static_cast<double>(N) * N);
  }
  double sum = 0;
  for (std::size_t i = 0; i < zero_vals.size(); ++i) {
    sum += zero_vals[i];
    out.max_route_diff = std::max(out.max_route_diff, std::fabs(zero_vals[i] - fourier_vals[i]));
  }
  out.empirical = sum / static_cast<double>(sw.members);
  return out;
}

}  // namespace asz
