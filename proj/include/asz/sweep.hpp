#pragma once

#include "asz/families.hpp"
#include "asz/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace asz {

// Counts #{alpha in F_{q^r} : Tr_{q^r/p} f(alpha) = k} for polynomials supported on
// a fixed index set I. For each alpha the vector t_i = Tr_{q^r/q}(alpha^i), i in I,
// is computed once; identical vectors are merged with multiplicities. Then
//   Tr_{q^r/p} f(alpha) = sum_i Tr_{q/p}(a_i t_i),
// so a polynomial costs one table lookup per (pattern, index).
class TraceCounter {
 public:
  TraceCounter(const FieldTower& tower, std::span<const std::uint32_t> indices);

  std::uint32_t p() const { return p_; }
  std::size_t width() const { return width_; }
  std::size_t pattern_count() const { return mult_.size(); }
  std::uint64_t field_size() const { return field_size_; }

  // lut[i*q + t] = Tr_{q/p}(a_i t); independent of r, so build once per polynomial
  static std::vector<std::uint32_t> trace_lut(const Field& fq, std::span<const std::uint32_t> coeffs);
  // out has p entries and is overwritten
  void count(const std::vector<std::uint32_t>& lut, std::span<std::uint64_t> out) const;

 private:
  std::uint32_t p_ = 0;
  std::uint64_t q_ = 0;
  std::size_t width_ = 0;
  std::uint64_t field_size_ = 0;
  std::vector<std::uint32_t> pat_;   // pattern-major, entries i*q + t_i
  std::vector<std::uint64_t> mult_;
};

struct SweepOptions {
  int jobs = 1;
  std::uint64_t cap = kDefaultCap;
};

// Trace-value counts for every member of a family and every 1 <= r <= max_r.
struct SweepResult {
  FamilySpec spec;
  std::uint32_t max_r = 0;
  std::uint64_t members = 0;
  std::vector<std::uint64_t> counts;

  std::uint32_t p() const { return spec.p; }
  std::span<const std::uint64_t> at(std::uint64_t member, std::uint32_t r) const {
    return {counts.data() + ((member * max_r) + (r - 1)) * spec.p, spec.p};
  }
  // sum over members, exact
  std::vector<std::uint64_t> total(std::uint32_t r) const;
};

// F_{q^r} for r = 1..max_r sharing one F_q
std::vector<FieldTower> build_towers(std::uint32_t p, std::uint32_t n, std::uint32_t max_r,
                                     std::uint64_t cap = kDefaultCap);

// OpenMP kernel over family members
SweepResult sweep_family(const FamilySpec& spec, std::uint32_t max_r, const SweepOptions& opt = {});
// serial Horner evaluation of every f at every alpha; slow, kept as the reference
SweepResult sweep_family_reference(const FamilySpec& spec, std::uint32_t max_r,
                                   const SweepOptions& opt = {});

}  // namespace asz
