#include "asz/cyclo.hpp"

#include "asz/errors.hpp"

#include <numbers>

namespace asz {

namespace {

std::uint32_t dim(std::uint32_t p) { return p == 2 ? 1 : p - 1; }

std::uint32_t mod_p(std::int64_t k, std::uint32_t p) {
  std::int64_t m = k % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(m < 0 ? m + p : m);
}

// fold a length-p vector indexed by zeta^0..zeta^{p-1} into canonical form
template <class T>
std::vector<T> reduce_full(std::uint32_t p, const std::vector<T>& full) {
  std::vector<T> out(dim(p));
  if (p == 2) {
    out[0] = full[0] - full[1];
    return out;
  }
  for (std::uint32_t k = 0; k + 1 < p; ++k) out[k] = full[k] - full[p - 1];
  return out;
}

}  // namespace

CycloElem::CycloElem(std::uint32_t p) : p_(p), c_(dim(p)) {
  if (p < 2) throw InvalidParameter("cyclotomic prime must be >= 2");
}

CycloElem::CycloElem(std::uint32_t p, std::vector<Rational> coords) : p_(p), c_(std::move(coords)) {
  if (c_.size() != dim(p)) throw InvalidParameter("cyclotomic coordinate length mismatch");
}

CycloElem CycloElem::integer(std::uint32_t p, Rational v) {
  CycloElem e(p);
  e.c_[0] = v;
  return e;
}

CycloElem CycloElem::zeta_power(std::uint32_t p, std::int64_t k) {
  std::vector<std::uint64_t> counts(p, 0);
  counts[mod_p(k, p)] = 1;
  return from_counts(p, counts, 1);
}

CycloElem CycloElem::from_counts(std::uint32_t p, std::span<const std::uint64_t> counts,
                                 std::uint32_t a) {
  std::vector<std::int64_t> s(counts.begin(), counts.end());
  return from_signed_counts(p, s, a);
}

CycloElem CycloElem::from_signed_counts(std::uint32_t p, std::span<const std::int64_t> counts,
                                        std::uint32_t a) {
  if (counts.size() != p) throw InvalidParameter("count vector must have length p");
  std::vector<std::int64_t> full(p, 0);
  for (std::uint32_t k = 0; k < p; ++k) {
    std::uint32_t e = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * k) % p);
    if (__builtin_add_overflow(full[e], counts[k], &full[e])) throw ArithmeticError("count overflow");
  }
  auto red = reduce_full(p, full);
  std::vector<Rational> c(red.begin(), red.end());
  return CycloElem(p, std::move(c));
}

void CycloElem::check_same(const CycloElem& o) const {
  if (p_ != o.p_) throw InvalidParameter("cyclotomic elements with different p");
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem CycloElem::operator-() const {
  CycloElem r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  a.check_same(b);
  const std::uint32_t p = a.p_;
  if (p == 2) return CycloElem(2, {a.c_[0] * b.c_[0]});
  std::vector<Rational> full(p);
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      if (b.c_[j].is_zero()) continue;
      full[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  return CycloElem(p, reduce_full(p, full));
}

CycloElem CycloElem::scaled(const Rational& s) const {
  CycloElem r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

CycloElem CycloElem::conj() const { return galois(p_ - 1); }

CycloElem CycloElem::galois(std::uint32_t k) const {
  if (k % p_ == 0) throw InvalidParameter("galois exponent divisible by p");
  if (p_ == 2) return *this;
  std::vector<Rational> full(p_);
  for (std::uint32_t i = 0; i + 1 < p_; ++i)
    full[static_cast<std::uint64_t>(i) * k % p_] += c_[i];
  return CycloElem(p_, reduce_full(p_, full));
}

bool CycloElem::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycloElem::is_integral() const {
  for (const auto& x : c_)
    if (!x.is_integer()) return false;
  return true;
}

bool CycloElem::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

std::complex<double> CycloElem::embed() const {
  auto v = embed_long();
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> CycloElem::embed_long() const {
  std::complex<long double> s = 0;
  if (p_ == 2) return c_[0].to_long_double();
  const long double w = 2.0L * std::numbers::pi_v<long double> / p_;
  for (std::uint32_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    s += c_[i].to_long_double() * std::complex<long double>(std::cos(w * i), std::sin(w * i));
  }
  return s;
}

std::string CycloElem::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].str();
  }
  return s + "]";
}

CycloElem additive_character(std::uint32_t a, std::uint32_t x, std::uint32_t p) {
  if (a % p == 0) throw InvalidParameter("trivial additive character");
  return CycloElem::zeta_power(p, static_cast<std::int64_t>((static_cast<std::uint64_t>(a) * x) % p));
}

std::complex<double> root_of_unity(std::uint32_t p, std::int64_t k) {
  const double w = 2.0 * std::numbers::pi * static_cast<double>(mod_p(k, p)) / p;
  return {std::cos(w), std::sin(w)};
}

}  // namespace asz
