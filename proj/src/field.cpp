#include "asz/field.hpp"

#include "asz/poly.hpp"

#include <string>

namespace asz {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::shared_ptr<const Field> Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidParameter("p = " + std::to_string(p) + " is not prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = 1;
  f->abs_k_ = 1;
  f->order_ = p;
  f->ppow_ = {1};
  if (p > 2) {
    f->find_generator();
  }
  return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> base, std::uint32_t k,
                                              std::uint64_t table_cap) {
  if (!base) throw InvalidParameter("null base field");
  if (k < 2) throw InvalidParameter("extension degree must be >= 2");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(order, base->order(), &order) || order > 0xFFFFFFFFull)
      throw CapExceeded("field order exceeds 32-bit element indices");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->p();
  f->k_ = k;
  f->abs_k_ = base->abs_degree() * k;
  f->order_ = order;
  f->base_ = base;
  f->ppow_.resize(f->abs_k_);
  f->ppow_[0] = 1;
  for (std::uint32_t j = 1; j < f->abs_k_; ++j) f->ppow_[j] = f->ppow_[j - 1] * f->p_;

  // lex-least monic irreducible of degree k over the base
  IrreducibleTable small(*base, k / 2, ~0ull);
  const std::uint64_t tail = order;
  bool found = false;
  for (std::uint64_t m = 0; m < tail; ++m) {
    PolyFq cand = monic_from_index(*base, k, m);
    if (small.is_irreducible(cand)) {
      f->modulus_ = cand.c;
      found = true;
      break;
    }
  }
  if (!found) throw ArithmeticError("no irreducible modulus found");

  f->find_generator();
  if (order <= table_cap) f->build_tables();
  f->build_trace();
  return f;
}

Field::Elem Field::neg(Elem a) const {
  if (a == 0) return 0;
  if (!base_) return p_ - a;
  if (p_ == 2) return a;
  if (has_tables()) {
    std::uint64_t s = log_[a] + (order_ - 1) / 2;
    if (s >= order_ - 1) s -= order_ - 1;
    return exp_[s];
  }
  Elem out = 0;
  Elem x = a;
  for (std::uint32_t j = 0; j < abs_k_; ++j) {
    Elem d = x % p_;
    x /= p_;
    if (d) out += static_cast<Elem>((p_ - d) * ppow_[j]);
  }
  return out;
}

Field::Elem Field::digit_add(Elem a, Elem b) const {
  Elem out = 0;
  for (std::uint32_t j = 0; j < abs_k_ && (a | b); ++j) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += static_cast<Elem>(s * ppow_[j]);
    a /= p_;
    b /= p_;
  }
  return out;
}

Field::Elem Field::zech_add(Elem a, Elem b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::int64_t m = static_cast<std::int64_t>(order_ - 1);
  std::int64_t la = log_[a], lb = log_[b];
  std::int64_t d = lb - la;
  if (d < 0) d += m;
  std::int32_t z = zech_[d];
  if (z < 0) return 0;
  std::int64_t s = la + z;
  if (s >= m) s -= m;
  return exp_[s];
}

Field::Elem Field::slow_mul(Elem a, Elem b) const {
  const Field& B = *base_;
  auto ca = coords(a), cb = coords(b);
  std::vector<Elem> t(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (!ca[i]) continue;
    for (std::uint32_t j = 0; j < k_; ++j) {
      if (!cb[j]) continue;
      t[i + j] = B.add(t[i + j], B.mul(ca[i], cb[j]));
    }
  }
  for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    Elem c = t[i];
    if (!c) continue;
    t[i] = 0;
    for (std::uint32_t j = 0; j < k_; ++j)
      if (modulus_[j]) t[i - k_ + j] = B.sub(t[i - k_ + j], B.mul(c, modulus_[j]));
  }
  return from_coords(std::span<const Elem>(t.data(), k_));
}

Field::Elem Field::inv(Elem a) const {
  if (a == 0) throw ArithmeticError("inverse of zero");
  if (has_tables()) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
  return pow(a, order_ - 2);
}

Field::Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (has_tables()) {
    unsigned __int128 s = static_cast<unsigned __int128>(log_[a]) * (e % (order_ - 1));
    return exp_[static_cast<std::uint64_t>(s % (order_ - 1))];
  }
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

std::vector<Field::Elem> Field::coords(Elem a) const {
  std::vector<Elem> c(k_);
  const std::uint64_t B = base_order();
  if (!base_) {
    c[0] = a;
    return c;
  }
  for (std::uint32_t j = 0; j < k_; ++j) {
    c[j] = static_cast<Elem>(a % B);
    a = static_cast<Elem>(a / B);
  }
  return c;
}

Field::Elem Field::from_coords(std::span<const Elem> c) const {
  const std::uint64_t B = base_order();
  std::uint64_t v = 0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * B + c[j];
  return static_cast<Elem>(v);
}

std::uint64_t Field::order_of(Elem a) const {
  if (a == 0) throw ArithmeticError("order of zero");
  std::uint64_t m = order_ - 1;
  for (auto l : prime_factors(order_ - 1))
    while (m % l == 0 && pow(a, m / l) == 1) m /= l;
  return m;
}

void Field::find_generator() {
  const std::uint64_t m = order_ - 1;
  auto ls = prime_factors(m);
  auto primitive = [&](Elem g) {
    if (g == 0) return false;
    for (auto l : ls)
      if (pow(g, m / l) == 1) return false;
    return true;
  };
  if (m == 1) {
    gen_ = 1;
    return;
  }
  if (primitive(variable())) {
    gen_ = variable();
    return;
  }
  for (std::uint64_t g = 2; g < order_; ++g) {
    if (primitive(static_cast<Elem>(g))) {
      gen_ = static_cast<Elem>(g);
      return;
    }
  }
  throw ArithmeticError("no primitive element found");
}

void Field::build_tables() {
  const std::uint64_t m = order_ - 1;
  std::vector<Elem> ex(m);
  std::vector<std::uint32_t> lg(order_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    ex[i] = x;
    lg[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, gen_);
  }
  if (x != 1) throw ArithmeticError("generator order mismatch");
  std::vector<std::int32_t> z(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    Elem v = digit_add(1, ex[i]);
    z[i] = v == 0 ? -1 : static_cast<std::int32_t>(lg[v]);
  }
  exp_ = std::move(ex);
  log_ = std::move(lg);
  zech_ = std::move(z);
}

void Field::build_trace() {
  const std::uint64_t B = base_order();
  trace_basis_.assign(k_, 0);
  Elem y = 1;
  for (std::uint32_t j = 0; j < k_; ++j) {
    Elem s = 0, x = y;
    for (std::uint32_t i = 0; i < k_; ++i) {
      s = add(s, x);
      x = pow(x, B);
    }
    if (s >= B) throw ArithmeticError("trace left the base field");
    trace_basis_[j] = s;
    y = mul(y, variable());
  }
}

Field::Elem Field::trace_to_base(Elem a) const {
  if (!base_) return a;
  const Field& B = *base_;
  const std::uint64_t Bo = base_order();
  Elem s = 0;
  for (std::uint32_t j = 0; j < k_; ++j) {
    Elem c = static_cast<Elem>(a % Bo);
    a = static_cast<Elem>(a / Bo);
    if (c) s = B.add(s, B.mul(c, trace_basis_[j]));
  }
  return s;
}

Field::Elem Field::trace_to_prime(Elem a) const {
  if (!base_) return a;
  return base_->trace_to_prime(trace_to_base(a));
}

Field::Elem Field::trace_to_prime_reference(Elem a) const {
  Elem s = 0, x = a;
  for (std::uint32_t i = 0; i < abs_k_; ++i) {
    s = add(s, x);
    x = frobenius(x);
  }
  if (s >= p_) throw ArithmeticError("absolute trace left F_p");
  return s;
}

FieldTower FieldTower::build(std::uint32_t p, std::uint32_t n, std::uint32_t r, std::uint64_t cap) {
  if (!is_prime(p)) throw InvalidParameter("p = " + std::to_string(p) + " is not prime");
  if (n < 1 || r < 1) throw InvalidParameter("extension degrees must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    if (__builtin_mul_overflow(q, p, &q) || q > cap) throw CapExceeded("q exceeds the element cap");
  auto fp = Field::prime(p);
  auto fq = n == 1 ? fp : Field::extension(fp, n, kDefaultCap);
  return over(fq, r, cap);
}

FieldTower FieldTower::over(FieldPtr fq, std::uint32_t r, std::uint64_t cap) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < r; ++i)
    if (__builtin_mul_overflow(size, fq->order(), &size) || size > cap)
      throw CapExceeded("q^r = " + std::to_string(fq->order()) + "^" + std::to_string(r) +
                        " exceeds the element cap " + std::to_string(cap));
  FieldTower t;
  t.fq_ = fq;
  t.fp_ = fq->is_prime_field() ? fq : Field::prime(fq->p());
  t.top_ = r == 1 ? fq : Field::extension(fq, r, std::min<std::uint64_t>(cap, kDefaultCap));
  t.r_ = r;
  return t;
}

FieldTower::FqElem FieldTower::trace_to_prime(FqElem x) const {
  if (x.level != Level::top) throw LevelMismatch("trace_to_prime expects a top-level element");
  if (x.value >= top_->order()) throw LevelMismatch("element index outside the top field");
  return {Level::prime, top_->trace_to_prime(x.value)};
}

}  // namespace asz
