#pragma once

#include "asz/field.hpp"
#include "asz/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace asz {

enum class FamilyKind { full, odd, monic_all };

std::string to_string(FamilyKind k);
FamilyKind parse_family_kind(const std::string& s);

struct FamilySpec {
  FamilyKind kind = FamilyKind::full;
  std::uint32_t p = 3;
  std::uint32_t n = 1;
  std::uint32_t d = 4;

  std::uint64_t q() const;
  void validate() const;  // throws InvalidParameter
  std::string str() const;
};

// indices whose coefficient may be nonzero, ascending; the last one is d
std::vector<std::uint32_t> support_indices(const FamilySpec& spec);

boost::multiprecision::cpp_int family_size(const FamilySpec& spec);
// throws CapExceeded above cap
std::uint64_t family_size_checked(const FamilySpec& spec, std::uint64_t cap = kDefaultCap);

bool is_member(const FamilySpec& spec, const PolyFq& f);

// Members are ordered lexicographically on their coefficient tuples read from
// the leading coefficient down. out receives the values on support_indices().
void member_coeffs_at(const FamilySpec& spec, std::uint64_t index, std::vector<std::uint32_t>& out);
PolyFq member_at(const FamilySpec& spec, std::uint64_t index);
PolyFq poly_from_support(const FamilySpec& spec, const std::vector<std::uint32_t>& coeffs);

// half-open range [begin, end) of member indices
class FamilyCursor {
 public:
  FamilyCursor(FamilySpec spec, std::uint64_t begin, std::uint64_t end);
  static FamilyCursor all(const FamilySpec& spec, std::uint64_t cap = kDefaultCap);

  bool done() const { return pos_ >= end_; }
  std::uint64_t position() const { return pos_; }
  PolyFq current() const { return member_at(spec_, pos_); }
  void next() { ++pos_; }
  std::uint64_t begin() const { return begin_; }
  std::uint64_t end() const { return end_; }
  // k disjoint contiguous cursors covering this range
  std::vector<FamilyCursor> split(std::uint64_t k) const;

 private:
  FamilySpec spec_;
  std::uint64_t begin_, end_, pos_;
};

std::vector<PolyFq> enumerate(const FamilySpec& spec, std::uint64_t cap = kDefaultCap);

PolyFq sample(const FamilySpec& spec, std::uint64_t seed);
PolyFq sample(const FamilySpec& spec, std::mt19937_64& rng);

// lex-least c in F_q with Tr_{q/p}(c) = 1
std::uint32_t distinguished_element(const Field& fq);

struct Reduction {
  PolyFq g;        // member of F_d
  std::uint32_t w; // Tr_{q/p}(a_0)
};

// Folds a_{i p^j} into x^i (through the inverse Frobenius) and the constant
// term into w, so that Tr f(alpha) = Tr (g + w c)(alpha) for every alpha.
Reduction reduce_to_family(const Field& fq, const PolyFq& f);

}  // namespace asz
