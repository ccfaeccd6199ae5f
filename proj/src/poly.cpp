#include "asz/poly.hpp"

#include <algorithm>
#include <sstream>

namespace asz {

PolyFq PolyFq::monomial(std::uint32_t a, std::size_t k) {
  std::vector<std::uint32_t> c(k + 1, 0);
  c[k] = a;
  return PolyFq(std::move(c));
}

PolyFq poly_add(const Field& F, const PolyFq& a, const PolyFq& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
  return PolyFq(std::move(c));
}

PolyFq poly_sub(const Field& F, const PolyFq& a, const PolyFq& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
  return PolyFq(std::move(c));
}

PolyFq poly_mul(const Field& F, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint32_t> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      if (b.c[j]) c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return PolyFq(std::move(c));
}

PolyFq poly_scale(const Field& F, const PolyFq& a, std::uint32_t s) {
  std::vector<std::uint32_t> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.mul(a.c[i], s);
  return PolyFq(std::move(c));
}

std::pair<PolyFq, PolyFq> poly_divmod(const Field& F, const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {PolyFq{}, a};
  std::vector<std::uint32_t> r = a.c;
  const std::size_t db = b.c.size() - 1;
  std::vector<std::uint32_t> quo(r.size() - db, 0);
  const std::uint32_t linv = F.inv(b.lead());
  for (std::size_t i = r.size(); i-- > db;) {
    std::uint32_t c = r[i];
    if (!c) continue;
    c = F.mul(c, linv);
    quo[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      if (b.c[j]) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.c[j]));
  }
  r.resize(db);
  return {PolyFq(std::move(quo)), PolyFq(std::move(r))};
}

PolyFq poly_mod(const Field& F, const PolyFq& a, const PolyFq& b) { return poly_divmod(F, a, b).second; }

PolyFq poly_monic(const Field& F, const PolyFq& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

PolyFq poly_gcd(const Field& F, PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

PolyFq poly_derivative(const Field& F, const PolyFq& a) {
  if (a.c.size() <= 1) return {};
  std::vector<std::uint32_t> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    // i * a_i with i reduced mod p, embedded as a prime-field element
    std::uint32_t ip = static_cast<std::uint32_t>(i % F.p());
    c[i - 1] = F.mul(ip, a.c[i]);
  }
  return PolyFq(std::move(c));
}

PolyFq poly_truncate(const PolyFq& a, std::size_t k) {
  if (a.c.size() <= k) return a;
  return PolyFq(std::vector<std::uint32_t>(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(k)));
}

bool divides_monic(const Field& F, const PolyFq& b, const PolyFq& a) {
  const std::size_t db = b.c.size() - 1;
  if (a.c.size() <= db) return a.is_zero();
  std::uint32_t buf[128];
  std::vector<std::uint32_t> heap;
  std::uint32_t* r = buf;
  if (a.c.size() > 128) {
    heap = a.c;
    r = heap.data();
  } else {
    std::copy(a.c.begin(), a.c.end(), buf);
  }
  for (std::size_t i = a.c.size(); i-- > db;) {
    std::uint32_t c = r[i];
    if (!c) continue;
    for (std::size_t j = 0; j < db; ++j)
      if (b.c[j]) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.c[j]));
  }
  for (std::size_t j = 0; j < db; ++j)
    if (r[j]) return false;
  return true;
}

std::uint32_t poly_eval(const Field& L, const PolyFq& f, std::uint32_t alpha) {
  std::uint32_t acc = 0;
  for (std::size_t i = f.c.size(); i-- > 0;) acc = L.add(L.mul(acc, alpha), f.c[i]);
  return acc;
}

PolyFq monic_from_index(const Field& F, std::size_t k, std::uint64_t idx) {
  std::vector<std::uint32_t> c(k + 1, 0);
  const std::uint64_t q = F.order();
  for (std::size_t j = 0; j < k; ++j) {
    c[j] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
  }
  c[k] = 1;
  return PolyFq(std::move(c));
}

namespace {

std::uint64_t checked_power(std::uint64_t q, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(v, q, &v) || v > cap)
      throw CapExceeded("q^" + std::to_string(e) + " exceeds the element cap");
  return v;
}

}  // namespace

IrreducibleTable::IrreducibleTable(const Field& F, std::size_t max_degree, std::uint64_t cap)
    : F_(&F), by_degree_(max_degree + 1) {
  for (std::size_t e = 1; e <= max_degree; ++e) {
    const std::uint64_t total = checked_power(F.order(), e, cap);
    auto& out = by_degree_[e];
    for (std::uint64_t m = 0; m < total; ++m) {
      PolyFq f = monic_from_index(F, e, m);
      if (is_irreducible(f)) out.push_back(std::move(f));
    }
  }
}

const std::vector<PolyFq>& IrreducibleTable::of_degree(std::size_t e) const {
  if (e >= by_degree_.size()) throw InvalidParameter("degree beyond the irreducible table");
  return by_degree_[e];
}

bool IrreducibleTable::is_irreducible(const PolyFq& f) const {
  const int k = f.degree();
  if (k < 1) return false;
  if (static_cast<std::size_t>(k / 2) > max_degree())
    throw InvalidParameter("irreducible table too small for trial division");
  for (int e = 1; 2 * e <= k; ++e)
    for (const auto& g : by_degree_[e])
      if (divides_monic(*F_, g, f)) return false;
  return true;
}

std::vector<PolyFq> enumerate_irreducibles(const Field& F, std::size_t e, std::uint64_t cap) {
  checked_power(F.order(), e, cap);
  IrreducibleTable t(F, e / 2, cap);
  std::vector<PolyFq> out;
  const std::uint64_t total = checked_power(F.order(), e, cap);
  for (std::uint64_t m = 0; m < total; ++m) {
    PolyFq f = monic_from_index(F, e, m);
    if (t.is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

int integer_mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::uint64_t count_irreducibles(std::size_t e, std::uint64_t q) {
  if (e == 0) throw InvalidParameter("degree must be >= 1");
  __int128 s = 0;
  for (std::size_t m = 1; m <= e; ++m) {
    if (e % m) continue;
    int mu = integer_mobius(m);
    if (!mu) continue;
    __int128 pw = 1;
    for (std::size_t i = 0; i < e / m; ++i) {
      pw *= q;
      if (pw > (static_cast<__int128>(1) << 100)) throw ArithmeticError("necklace count overflow");
    }
    s += mu * pw;
  }
  return static_cast<std::uint64_t>(s / static_cast<__int128>(e));
}

std::vector<std::pair<PolyFq, int>> factor(const Field& F, const PolyFq& P, std::uint64_t cap) {
  if (P.is_zero()) throw InvalidParameter("factor of the zero polynomial");
  std::vector<std::pair<PolyFq, int>> out;
  PolyFq rest = poly_monic(F, P);
  for (std::size_t e = 1; 2 * e <= static_cast<std::size_t>(std::max(rest.degree(), 0)); ++e) {
    for (const auto& g : enumerate_irreducibles(F, e, cap)) {
      int k = 0;
      while (rest.degree() >= g.degree() && divides_monic(F, g, rest)) {
        rest = poly_divmod(F, rest, g).first;
        ++k;
      }
      if (k) out.emplace_back(g, k);
    }
  }
  if (rest.degree() >= 1) {
    // what is left has no factor of degree <= deg/2, so it is irreducible
    bool merged = false;
    for (auto& [g, k] : out)
      if (g == rest) {
        ++k;
        merged = true;
      }
    if (!merged) out.emplace_back(rest, 1);
  }
  return out;
}

int mobius(const Field& F, const PolyFq& P, std::uint64_t cap) {
  auto fs = factor(F, P, cap);
  int mu = 1;
  for (const auto& [g, k] : fs) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

PolyFq minimal_poly(const FieldTower& tower, std::uint32_t alpha) {
  const Field& L = tower.top();
  const std::uint64_t q = tower.q();
  // conjugates alpha^{q^i} until they repeat
  std::vector<std::uint32_t> conj{alpha};
  for (std::uint32_t x = L.pow(alpha, q); x != alpha; x = L.pow(x, q)) conj.push_back(x);
  PolyFq m = PolyFq::constant(1);
  for (auto c : conj) m = poly_mul(L, m, PolyFq(std::vector<std::uint32_t>{L.neg(c), 1}));
  for (auto c : m.c)
    if (c >= q) throw ArithmeticError("minimal polynomial left F_q");
  return m;
}

PolyFq reciprocal(const PolyFq& h) {
  std::vector<std::uint32_t> c(h.c.rbegin(), h.c.rend());
  return PolyFq(std::move(c));
}

std::string poly_to_string(const PolyFq& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.c[i]);
  }
  return s;
}

PolyFq poly_from_string(const Field& F, const std::string& s) {
  std::vector<std::uint32_t> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidParameter("empty coefficient in '" + s + "'");
    tok = tok.substr(b, e - b + 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw InvalidParameter("bad coefficient '" + tok + "'");
    }
    if (pos != tok.size() || v >= F.order())
      throw InvalidParameter("coefficient '" + tok + "' is not a field element index");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return PolyFq(std::move(c));
}

std::string poly_pretty(const PolyFq& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = f.c.size(); i-- > 0;) {
    std::uint32_t a = f.c[i];
    if (!a) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += std::to_string(a);
      continue;
    }
    if (a != 1) s += std::to_string(a) + "*";
    s += i == 1 ? "x" : "x^" + std::to_string(i);
  }
  return s;
}

}  // namespace asz
