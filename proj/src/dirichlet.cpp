#include "asz/dirichlet.hpp"

#include "asz/lfunction.hpp"

namespace asz {

DirichletChar make_char(FieldPtr fq, const PolyFq& f, std::uint32_t d, std::uint32_t a) {
  if (!fq) throw InvalidParameter("null field");
  if (a % fq->p() == 0) throw InvalidParameter("trivial additive character");
  if (f.degree() > static_cast<int>(d)) throw InvalidParameter("deg f exceeds d");
  if (f.coeff(0) != 0) throw InvalidParameter("chi_f needs f(0) = 0");
  for (auto c : f.c)
    if (c >= fq->order()) throw InvalidParameter("coefficient outside F_q");
  return {std::move(fq), d, f, a};
}

int chi_exponent(const DirichletChar& chi, const PolyFq& g) {
  const Field& F = *chi.fq;
  if (g.is_zero() || g.coeff(0) == 0) return -1;
  const std::uint32_t d = chi.d;
  const std::uint32_t binv = F.inv(g.coeff(0));
  // e_j = (-1)^j b_j / b_0
  std::vector<std::uint32_t> e(d + 1, 0), t(d + 1, 0);
  for (std::uint32_t j = 1; j <= d; ++j) {
    std::uint32_t v = F.mul(g.coeff(j), binv);
    e[j] = j % 2 ? F.neg(v) : v;
  }
  // Newton: t_m = sum_{i<m} (-1)^{i-1} e_i t_{m-i} + (-1)^{m-1} m e_m
  for (std::uint32_t m = 1; m <= d; ++m) {
    std::uint32_t acc = F.mul(static_cast<std::uint32_t>(m % F.p()), e[m]);
    if (m % 2 == 0) acc = F.neg(acc);
    for (std::uint32_t i = 1; i < m; ++i) {
      std::uint32_t term = F.mul(e[i], t[m - i]);
      acc = i % 2 ? F.add(acc, term) : F.sub(acc, term);
    }
    t[m] = acc;
  }
  std::uint32_t s = 0;
  for (std::uint32_t j = 1; j <= d; ++j)
    if (chi.f.coeff(j)) s = F.add(s, F.mul(chi.f.coeff(j), t[j]));
  return static_cast<int>(F.trace_to_prime(s));
}

CycloElem chi_eval(const DirichletChar& chi, const PolyFq& g) {
  int k = chi_exponent(chi, g);
  if (k < 0) return CycloElem::zero(chi.p());
  return additive_character(chi.a, static_cast<std::uint32_t>(k), chi.p());
}

std::vector<CycloElem> l_chi(const DirichletChar& chi, std::uint64_t cap) {
  const Field& F = *chi.fq;
  const std::uint32_t p = chi.p();
  std::vector<CycloElem> out;
  std::uint64_t total = 1;
  for (std::uint32_t k = 0; k <= chi.d; ++k) {
    std::vector<std::uint64_t> counts(p, 0);
    for (std::uint64_t m = 0; m < total; ++m) {
      int e = chi_exponent(chi, monic_from_index(F, k, m));
      if (e >= 0) ++counts[static_cast<std::size_t>(e)];
    }
    out.push_back(CycloElem::from_counts(p, counts, chi.a));
    if (__builtin_mul_overflow(total, F.order(), &total) || (k < chi.d && total > cap))
      throw CapExceeded("q^d exceeds the element cap");
  }
  return out;
}

FactorizationCheck verify_factorization(FieldPtr fq, const PolyFq& f, std::uint32_t a, std::uint64_t cap) {
  const int d = f.degree();
  if (d < 1) throw InvalidParameter("deg f must be >= 1");
  auto chi = make_char(fq, f, static_cast<std::uint32_t>(d), a);
  FactorizationCheck out;
  out.lchi = l_chi(chi, cap);
  auto L = l_polynomial(f, a, fq->p(), fq->abs_degree(), cap);
  const std::uint32_t p = fq->p();
  out.expected.assign(static_cast<std::size_t>(d) + 1, CycloElem::zero(p));
  for (std::size_t k = 0; k < L.c.size(); ++k) {
    out.expected[k] += L.c[k];
    out.expected[k + 1] -= L.c[k];
  }
  out.ok = true;
  for (std::size_t k = 0; k < out.expected.size(); ++k) {
    out.diff.push_back(out.lchi[k] - out.expected[k]);
    if (!out.diff.back().is_zero()) out.ok = false;
  }
  return out;
}

namespace {

// r <- r / (1 + c x^j) mod x^D
void divide_binomial(const Field& F, std::vector<std::uint32_t>& r, std::uint32_t c, std::uint32_t j) {
  for (std::size_t i = j; i < r.size(); ++i)
    if (r[i - j]) r[i] = F.sub(r[i], F.mul(c, r[i - j]));
}

// g <- g * (1 + c y^k), truncated to g.size()
void times_binomial(const Field& F, std::vector<std::uint32_t>& g, std::uint32_t c, std::uint32_t k) {
  for (std::size_t i = g.size(); i-- > k;)
    if (g[i - k]) g[i] = F.add(g[i], F.mul(c, g[i - k]));
}

}  // namespace

DecompositionWitness k_membership(const Field& fq, const PolyFq& h, std::uint32_t D, bool allow_even) {
  if (h.coeff(0) == 0) throw InvalidParameter("k_membership needs h(0) != 0");
  if (D < 1) throw InvalidParameter("D must be >= 1");
  const std::uint32_t p = fq.p();
  const std::uint32_t h0 = h.coeff(0), inv0 = fq.inv(h0);
  std::vector<std::uint32_t> res(D);
  for (std::uint32_t j = 0; j < D; ++j) res[j] = fq.mul(h.coeff(j), inv0);
  std::vector<std::uint32_t> g1((D + p - 1) / p, 0), g2((D + 1) / 2, 0);
  g1[0] = 1;
  g2[0] = 1;
  DecompositionWitness w;
  for (std::uint32_t j = 1; j < D; ++j) {
    const std::uint32_t c = res[j];
    if (!c) continue;
    if (allow_even && j % 2 == 0) {
      divide_binomial(fq, res, c, j);
      times_binomial(fq, g2, c, j / 2);
    } else if (j % p == 0) {
      divide_binomial(fq, res, c, j);
      times_binomial(fq, g1, c, j / p);
    } else {
      w.fail_level = j;
      w.obstruction = c;
      return w;
    }
  }
  for (auto& x : g1) x = fq.mul(x, h0);
  w.member = true;
  w.g1 = PolyFq(std::move(g1));
  w.g2 = PolyFq(std::move(g2));
  return w;
}

bool verify_witness(const Field& fq, const PolyFq& h, std::uint32_t D, const DecompositionWitness& w) {
  if (!w.member) return false;
  const std::uint32_t p = fq.p();
  std::vector<std::uint32_t> a(D, 0), b(D, 0);
  for (std::size_t i = 0; i < w.g1.c.size() && i * p < D; ++i) a[i * p] = w.g1.c[i];
  for (std::size_t i = 0; i < w.g2.c.size() && 2 * i < D; ++i) b[2 * i] = w.g2.c[i];
  PolyFq prod = poly_truncate(poly_mul(fq, PolyFq(a), PolyFq(b)), D);
  return prod == poly_truncate(h, D);
}

namespace {

bool absorbable(const SubgroupSpec& spec, std::uint32_t p, std::uint32_t j) {
  return j % p == 0 || (spec.kind == SubgroupKind::odd_f && j % 2 == 0);
}

std::uint64_t q_power(std::uint64_t q, std::uint32_t e) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(v, q, &v)) throw ArithmeticError("group size overflow");
  return v;
}

void check_spec(const Field& fq, const SubgroupSpec& spec) {
  if (spec.d < 1) throw InvalidParameter("d must be >= 1");
  if (spec.d % fq.p() == 0) throw InvalidParameter("subgroup needs gcd(d, p) = 1");
  if (spec.kind == SubgroupKind::odd_f && (fq.p() == 2 || spec.d % 2 == 0))
    throw InvalidParameter("odd family needs p > 2 and d odd");
}

}  // namespace

std::uint64_t subgroup_size(const Field& fq, const SubgroupSpec& spec, std::uint32_t D) {
  std::uint32_t free = 0;
  for (std::uint32_t j = 1; j < D; ++j)
    if (!absorbable(spec, fq.p(), j)) ++free;
  return q_power(fq.order(), free);
}

std::uint64_t annihilator_size(const Field& fq, const SubgroupSpec& spec, std::uint32_t D) {
  std::uint32_t fixed = 0;
  for (std::uint32_t j = 1; j < D; ++j)
    if (absorbable(spec, fq.p(), j)) ++fixed;
  return (fq.order() - 1) * q_power(fq.order(), fixed);
}

std::uint64_t eta_subgroup(const Field& fq, const SubgroupSpec& spec, std::uint32_t s, std::uint32_t D,
                           std::uint32_t k, std::uint64_t cap) {
  check_spec(fq, spec);
  std::uint64_t count = 0;
  for (const auto& h : enumerate_irreducibles(fq, s, cap)) {
    if (h.coeff(0) == 0) continue;  // h = x
    // H^k is trivial when p | k, otherwise equal to H
    if (k % fq.p() == 0 || k_membership(fq, h, D, spec.kind == SubgroupKind::odd_f).member) ++count;
  }
  return count;
}

ExactScaled dirprop_average(const Field& fq, const SubgroupSpec& spec, int r, std::uint64_t cap) {
  check_spec(fq, spec);
  if (r < 1) throw InvalidParameter("r must be >= 1");
  const std::uint32_t d = spec.d;
  const std::int64_t H = static_cast<std::int64_t>(subgroup_size(fq, spec, d + 1));
  const std::int64_t Hd = static_cast<std::int64_t>(subgroup_size(fq, spec, d));
  const std::int64_t prim = H - Hd;
  Rational inner = 0;
  const struct {
    std::uint32_t D;
    std::int64_t size;
    int mu;
  } parts[] = {{d + 1, H, 1}, {d, Hd, -1}};
  for (const auto& part : parts) {
    Rational s_sum = 0;
    for (int s = 1; s <= r; ++s) {
      if (r % s) continue;
      auto eta = eta_subgroup(fq, spec, static_cast<std::uint32_t>(s), part.D, static_cast<std::uint32_t>(r / s), cap);
      s_sum += Rational(s) * Rational(static_cast<std::int64_t>(eta));
    }
    inner += Rational(part.mu) * Rational(part.size) * s_sum;
  }
  Rational bracket = Rational(-1) - inner / Rational(prim);
  return {CycloElem::integer(fq.p(), bracket), -r};
}

std::vector<ProbeDegree> niceconj_probe(const Field& fq, std::uint32_t d, std::uint32_t r_max, std::uint64_t cap) {
  if (fq.p() == 2) throw InvalidParameter("probe needs p > 2");
  if (4 * r_max >= d) throw InvalidParameter("probe needs r_max < d/4");
  std::vector<ProbeDegree> out;
  for (std::uint32_t r = 1; r <= r_max; ++r) {
    ProbeDegree pd;
    pd.r = r;
    for (const auto& h : enumerate_irreducibles(fq, r, cap)) {
      if (h.coeff(0) == 0) continue;
      ++pd.irreducibles;
      if (!k_membership(fq, h, d, true).member) continue;
      ++pd.members;
      bool even = true;
      for (std::size_t i = 1; i < h.c.size(); i += 2)
        if (h.c[i]) even = false;
      if (even)
        ++pd.even_members;
      else
        pd.counterexamples.push_back(h);
    }
    out.push_back(std::move(pd));
  }
  return out;
}

}  // namespace asz
