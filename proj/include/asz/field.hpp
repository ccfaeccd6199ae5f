#pragma once

#include "asz/errors.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace asz {

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// A finite field presented either as F_p or as a simple extension of a base field.
//
// Elements are uint32 indices. An element sum_j c_j y^j (y the class of the
// variable, c_j in the base) has index sum_j c_j * B^j with B = #base, so base
// elements keep their index under the embedding, all the way down to F_p.
// The index read in base p gives the coordinates over F_p in the power basis
// of the whole tower.
class Field {
 public:
  using Elem = std::uint32_t;

  static std::shared_ptr<const Field> prime(std::uint32_t p);
  // degree-k extension of base by the lex-least monic irreducible
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> base, std::uint32_t k,
                                                std::uint64_t table_cap = kDefaultCap);

  std::uint32_t p() const { return p_; }
  std::uint64_t order() const { return order_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t abs_degree() const { return abs_k_; }
  bool is_prime_field() const { return base_ == nullptr; }
  const Field* base() const { return base_.get(); }
  std::uint64_t base_order() const { return base_ ? base_->order() : p_; }
  // monic, low to high, over the base (empty for a prime field)
  const std::vector<Elem>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }
  Elem generator() const { return gen_; }

  Elem add(Elem a, Elem b) const {
    if (!base_) return static_cast<Elem>((a + b) % p_);
    if (p_ == 2) return a ^ b;
    if (has_tables()) return zech_add(a, b);
    return digit_add(a, b);
  }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!base_) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
      std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
      if (s >= order_ - 1) s -= order_ - 1;
      return exp_[s];
    }
    return slow_mul(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  // Tr down to the base field, from the linear table
  Elem trace_to_base(Elem a) const;
  // Tr down to F_p through each level
  Elem trace_to_prime(Elem a) const;
  // Tr as the sum of Frobenius conjugates a^{p^i}; reference route
  Elem trace_to_prime_reference(Elem a) const;

  std::vector<Elem> coords(Elem a) const;  // over the base, length degree()
  Elem from_coords(std::span<const Elem> c) const;
  // the class of the variable (index B); for F_p returns 1
  Elem variable() const { return base_ ? static_cast<Elem>(base_order()) : 1; }
  // multiplicative order, for tests
  std::uint64_t order_of(Elem a) const;

 private:
  Field() = default;
  Elem zech_add(Elem a, Elem b) const;
  Elem digit_add(Elem a, Elem b) const;
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();
  void find_generator();
  void build_trace();

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 1;
  std::uint32_t abs_k_ = 1;
  std::uint64_t order_ = 0;
  std::shared_ptr<const Field> base_;
  std::vector<Elem> modulus_;
  std::vector<std::uint64_t> ppow_;  // p^j for the absolute digits
  Elem gen_ = 1;
  std::vector<Elem> exp_;            // exp_[i] = g^i, i < order-1
  std::vector<std::uint32_t> log_;   // log_[a], a != 0
  std::vector<std::int32_t> zech_;   // 1 + g^i = g^{zech_[i]}, -1 when zero
  std::vector<Elem> trace_basis_;    // Tr_{L/base}(y^j)
};

using FieldPtr = std::shared_ptr<const Field>;

// F_p in F_q = F_{p^n} in F_{q^r}; immutable once built.
class FieldTower {
 public:
  enum class Level { prime, middle, top };
  struct FqElem {
    Level level;
    std::uint32_t value;
  };

  static FieldTower build(std::uint32_t p, std::uint32_t n, std::uint32_t r,
                          std::uint64_t cap = kDefaultCap);
  // reuse an already built F_q
  static FieldTower over(FieldPtr fq, std::uint32_t r, std::uint64_t cap = kDefaultCap);

  std::uint32_t p() const { return fp_->p(); }
  std::uint32_t n() const { return fq_->abs_degree(); }
  std::uint32_t r() const { return r_; }
  std::uint64_t q() const { return fq_->order(); }
  std::uint64_t size() const { return top_->order(); }

  const Field& prime_field() const { return *fp_; }
  const Field& fq() const { return *fq_; }
  const Field& top() const { return *top_; }
  FieldPtr fq_ptr() const { return fq_; }
  FieldPtr top_ptr() const { return top_; }

  std::vector<std::uint32_t> modulus_q() const { return fq_->modulus(); }
  std::vector<std::uint32_t> modulus_r() const {
    return top_.get() == fq_.get() ? std::vector<std::uint32_t>{} : top_->modulus();
  }

  FqElem trace_to_prime(FqElem x) const;
  // Tr_{q^r/q}
  std::uint32_t trace_to_fq(std::uint32_t x) const {
    return top_.get() == fq_.get() ? x : top_->trace_to_base(x);
  }

 private:
  FieldPtr fp_, fq_, top_;
  std::uint32_t r_ = 1;
};

}  // namespace asz
