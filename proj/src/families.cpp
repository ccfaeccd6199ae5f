#include "asz/families.hpp"

#include "asz/rng.hpp"

#include <numeric>

namespace asz {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::full: return "full";
    case FamilyKind::odd: return "odd";
    case FamilyKind::monic_all: return "monic";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& s) {
  if (s == "full") return FamilyKind::full;
  if (s == "odd") return FamilyKind::odd;
  if (s == "monic" || s == "monic_all") return FamilyKind::monic_all;
  throw InvalidParameter("unknown family '" + s + "' (full|odd|monic)");
}

std::uint64_t FamilySpec::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    if (__builtin_mul_overflow(q, p, &q)) throw InvalidParameter("q overflows");
  return q;
}

void FamilySpec::validate() const {
  if (!is_prime(p)) throw InvalidParameter("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw InvalidParameter("n must be >= 1");
  if (d < 1) throw InvalidParameter("d must be >= 1");
  if (q() > 0xFFFFFFFFull) throw InvalidParameter("q too large");
  if (kind == FamilyKind::monic_all) return;
  if (d % p == 0) throw InvalidParameter("family requires gcd(d, p) = 1");
  if (kind == FamilyKind::odd) {
    if (p == 2) throw InvalidParameter("odd family requires p > 2");
    if (d % 2 == 0) throw InvalidParameter("odd family requires d odd");
  }
}

std::string FamilySpec::str() const {
  return to_string(kind) + "(p=" + std::to_string(p) + ",n=" + std::to_string(n) +
         ",d=" + std::to_string(d) + ")";
}

std::vector<std::uint32_t> support_indices(const FamilySpec& spec) {
  std::vector<std::uint32_t> out;
  if (spec.kind == FamilyKind::monic_all) {
    for (std::uint32_t i = 0; i <= spec.d; ++i) out.push_back(i);
    return out;
  }
  for (std::uint32_t i = 1; i <= spec.d; ++i) {
    if (i % spec.p == 0) continue;
    if (spec.kind == FamilyKind::odd && i % 2 == 0) continue;
    out.push_back(i);
  }
  return out;
}

boost::multiprecision::cpp_int family_size(const FamilySpec& spec) {
  spec.validate();
  const auto idx = support_indices(spec);
  boost::multiprecision::cpp_int s = spec.kind == FamilyKind::monic_all ? 1 : spec.q() - 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) s *= spec.q();
  return s;
}

std::uint64_t family_size_checked(const FamilySpec& spec, std::uint64_t cap) {
  auto s = family_size(spec);
  if (s > cap)
    throw CapExceeded("family " + spec.str() + " has " + s.str() + " members, cap " +
                      std::to_string(cap));
  return static_cast<std::uint64_t>(s);
}

bool is_member(const FamilySpec& spec, const PolyFq& f) {
  if (f.degree() != static_cast<int>(spec.d)) return false;
  for (auto c : f.c)
    if (c >= spec.q()) return false;
  if (spec.kind == FamilyKind::monic_all) return f.lead() == 1;
  const auto idx = support_indices(spec);
  std::vector<bool> allowed(spec.d + 1, false);
  for (auto i : idx) allowed[i] = true;
  for (std::uint32_t i = 0; i <= spec.d; ++i)
    if (!allowed[i] && f.coeff(i) != 0) return false;
  return true;
}

void member_coeffs_at(const FamilySpec& spec, std::uint64_t index, std::vector<std::uint32_t>& out) {
  const auto q = spec.q();
  const std::size_t m = spec.kind == FamilyKind::monic_all ? spec.d + 1 : support_indices(spec).size();
  out.resize(m);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    out[j] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  if (spec.kind == FamilyKind::monic_all) {
    out[m - 1] = 1;
  } else {
    if (index >= q - 1) throw InvalidParameter("member index out of range");
    out[m - 1] = static_cast<std::uint32_t>(index + 1);
  }
}

PolyFq poly_from_support(const FamilySpec& spec, const std::vector<std::uint32_t>& coeffs) {
  const auto idx = support_indices(spec);
  std::vector<std::uint32_t> c(spec.d + 1, 0);
  for (std::size_t j = 0; j < idx.size(); ++j) c[idx[j]] = coeffs[j];
  return PolyFq(std::move(c));
}

PolyFq member_at(const FamilySpec& spec, std::uint64_t index) {
  std::vector<std::uint32_t> co;
  member_coeffs_at(spec, index, co);
  return poly_from_support(spec, co);
}

FamilyCursor::FamilyCursor(FamilySpec spec, std::uint64_t begin, std::uint64_t end)
    : spec_(spec), begin_(begin), end_(end), pos_(begin) {
  if (begin > end) throw InvalidParameter("cursor range reversed");
}

FamilyCursor FamilyCursor::all(const FamilySpec& spec, std::uint64_t cap) {
  return FamilyCursor(spec, 0, family_size_checked(spec, cap));
}

std::vector<FamilyCursor> FamilyCursor::split(std::uint64_t k) const {
  if (k == 0) throw InvalidParameter("split into zero parts");
  std::vector<FamilyCursor> out;
  const std::uint64_t len = end_ - begin_;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t b = begin_ + len * i / k;
    std::uint64_t e = begin_ + len * (i + 1) / k;
    out.emplace_back(spec_, b, e);
  }
  return out;
}

std::vector<PolyFq> enumerate(const FamilySpec& spec, std::uint64_t cap) {
  std::vector<PolyFq> out;
  for (auto c = FamilyCursor::all(spec, cap); !c.done(); c.next()) out.push_back(c.current());
  return out;
}

PolyFq sample(const FamilySpec& spec, std::mt19937_64& rng) {
  spec.validate();
  const auto q = spec.q();
  const auto idx = support_indices(spec);
  std::vector<std::uint32_t> co(idx.size());
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) co[j] = static_cast<std::uint32_t>(uniform_below(rng, q));
  co.back() = spec.kind == FamilyKind::monic_all ? 1
                                                 : static_cast<std::uint32_t>(1 + uniform_below(rng, q - 1));
  return poly_from_support(spec, co);
}

PolyFq sample(const FamilySpec& spec, std::uint64_t seed) {
  auto g = stream_engine(seed, 0);
  return sample(spec, g);
}

std::uint32_t distinguished_element(const Field& fq) {
  for (std::uint64_t c = 0; c < fq.order(); ++c)
    if (fq.trace_to_prime(static_cast<std::uint32_t>(c)) == 1) return static_cast<std::uint32_t>(c);
  throw ArithmeticError("trace is not surjective");
}

Reduction reduce_to_family(const Field& fq, const PolyFq& f) {
  const std::uint32_t p = fq.p();
  const std::uint32_t n = fq.abs_degree();
  const int d = f.degree();
  if (d < 1) throw InvalidParameter("reduce_to_family needs deg f >= 1");
  if (d % static_cast<int>(p) == 0) throw InvalidParameter("reduce_to_family requires gcd(d, p) = 1");
  std::vector<std::uint32_t> g(static_cast<std::size_t>(d) + 1, 0);
  for (int k = 1; k <= d; ++k) {
    std::uint32_t a = f.coeff(static_cast<std::size_t>(k));
    if (!a) continue;
    int i = k;
    std::uint32_t j = 0;
    while (i % static_cast<int>(p) == 0) {
      i /= static_cast<int>(p);
      ++j;
    }
    // a^{1/p^j} = a^{p^{n - (j mod n)}} in F_q
    std::uint32_t steps = (n - j % n) % n;
    for (std::uint32_t s = 0; s < steps; ++s) a = fq.frobenius(a);
    g[static_cast<std::size_t>(i)] = fq.add(g[static_cast<std::size_t>(i)], a);
  }
  return {PolyFq(std::move(g)), fq.trace_to_prime(f.coeff(0))};
}

}  // namespace asz
