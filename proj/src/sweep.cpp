#include "asz/sweep.hpp"

#include "asz/poly.hpp"

#include <omp.h>

#include <unordered_map>

namespace asz {

namespace {

// above this many possible patterns fall back to a hash map, and above 2^62 skip merging
constexpr std::uint64_t kDenseLimit = 1ull << 22;

}  // namespace

TraceCounter::TraceCounter(const FieldTower& tower, std::span<const std::uint32_t> indices)
    : p_(tower.p()), q_(tower.q()), width_(indices.size()), field_size_(tower.size()) {
  if (q_ > 65536) throw InvalidParameter("trace counter supports q <= 65536");
  if (indices.empty()) throw InvalidParameter("empty index set");
  const Field& L = tower.top();
  std::uint32_t max_i = 0;
  for (auto i : indices) max_i = std::max(max_i, i);

  // number of distinct keys if we encode t as a base-q number
  std::uint64_t key_space = 1;
  bool keyable = true;
  for (std::size_t j = 0; j < width_; ++j)
    if (__builtin_mul_overflow(key_space, q_, &key_space) || key_space > (1ull << 62)) {
      keyable = false;
      break;
    }

  std::vector<std::uint32_t> t(width_);
  std::vector<std::uint32_t> powers(max_i + 1);
  auto compute = [&](std::uint32_t alpha) {
    powers[0] = 1;
    for (std::uint32_t k = 1; k <= max_i; ++k) powers[k] = L.mul(powers[k - 1], alpha);
    for (std::size_t j = 0; j < width_; ++j) t[j] = tower.trace_to_fq(powers[indices[j]]);
  };
  auto key_of = [&]() {
    std::uint64_t k = 0;
    for (std::size_t j = width_; j-- > 0;) k = k * q_ + t[j];
    return k;
  };
  auto push = [&](std::uint64_t m) {
    for (std::size_t j = 0; j < width_; ++j) pat_.push_back(static_cast<std::uint32_t>(j * q_ + t[j]));
    mult_.push_back(m);
  };

  const std::uint64_t N = tower.size();
  if (keyable && key_space <= kDenseLimit) {
    std::vector<std::uint64_t> dense(key_space, 0);
    for (std::uint64_t a = 0; a < N; ++a) {
      compute(static_cast<std::uint32_t>(a));
      ++dense[key_of()];
    }
    for (std::uint64_t k = 0; k < key_space; ++k) {
      if (!dense[k]) continue;
      std::uint64_t x = k;
      for (std::size_t j = 0; j < width_; ++j) {
        t[j] = static_cast<std::uint32_t>(x % q_);
        x /= q_;
      }
      push(dense[k]);
    }
  } else if (keyable && N > key_space / 4) {
    // worth merging; keep first-seen order so output is deterministic
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (std::uint64_t a = 0; a < N; ++a) {
      compute(static_cast<std::uint32_t>(a));
      auto [it, fresh] = slot.emplace(key_of(), mult_.size());
      if (fresh)
        push(1);
      else
        ++mult_[it->second];
    }
  } else {
    for (std::uint64_t a = 0; a < N; ++a) {
      compute(static_cast<std::uint32_t>(a));
      push(1);
    }
  }
}

std::vector<std::uint32_t> TraceCounter::trace_lut(const Field& fq, std::span<const std::uint32_t> coeffs) {
  const std::uint64_t q = fq.order();
  std::vector<std::uint32_t> lut(coeffs.size() * q);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const std::uint32_t a = coeffs[j];
    if (a == 0) continue;
    for (std::uint64_t t = 0; t < q; ++t)
      lut[j * q + t] = fq.trace_to_prime(fq.mul(a, static_cast<std::uint32_t>(t)));
  }
  return lut;
}

void TraceCounter::count(const std::vector<std::uint32_t>& lut, std::span<std::uint64_t> out) const {
  std::fill(out.begin(), out.end(), 0);
  const std::uint32_t* pat = pat_.data();
  const std::uint32_t* L = lut.data();
  const std::size_t w = width_;
  const std::size_t np = mult_.size();
  if (p_ == 2) {
    std::uint64_t ones = 0;
    for (std::size_t k = 0; k < np; ++k, pat += w) {
      std::uint32_t acc = 0;
      for (std::size_t j = 0; j < w; ++j) acc ^= L[pat[j]];
      ones += acc * mult_[k];
    }
    out[1] = ones;
    out[0] = field_size_ - ones;
    return;
  }
  for (std::size_t k = 0; k < np; ++k, pat += w) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < w; ++j) acc += L[pat[j]];
    out[acc % p_] += mult_[k];
  }
}

std::vector<std::uint64_t> SweepResult::total(std::uint32_t r) const {
  std::vector<std::uint64_t> s(spec.p, 0);
  for (std::uint64_t m = 0; m < members; ++m) {
    auto c = at(m, r);
    for (std::uint32_t k = 0; k < spec.p; ++k) s[k] += c[k];
  }
  return s;
}

std::vector<FieldTower> build_towers(std::uint32_t p, std::uint32_t n, std::uint32_t max_r,
                                     std::uint64_t cap) {
  std::vector<FieldTower> out;
  auto base = FieldTower::build(p, n, 1, cap);
  out.push_back(base);
  for (std::uint32_t r = 2; r <= max_r; ++r) out.push_back(FieldTower::over(base.fq_ptr(), r, cap));
  return out;
}

namespace {

SweepResult prepare(const FamilySpec& spec, std::uint32_t max_r, const SweepOptions& opt) {
  spec.validate();
  if (max_r < 1) throw InvalidParameter("max_r must be >= 1");
  SweepResult res;
  res.spec = spec;
  res.max_r = max_r;
  res.members = family_size_checked(spec, opt.cap);
  res.counts.assign(res.members * max_r * spec.p, 0);
  return res;
}

}  // namespace

SweepResult sweep_family(const FamilySpec& spec, std::uint32_t max_r, const SweepOptions& opt) {
  SweepResult res = prepare(spec, max_r, opt);
  const auto towers = build_towers(spec.p, spec.n, max_r, opt.cap);
  const auto idx = support_indices(spec);
  std::vector<TraceCounter> counters;
  counters.reserve(max_r);
  for (const auto& t : towers) counters.emplace_back(t, idx);
  const Field& fq = towers.front().fq();
  const std::uint32_t p = spec.p;
  const std::int64_t members = static_cast<std::int64_t>(res.members);

#pragma omp parallel num_threads(std::max(1, opt.jobs))
  {
    std::vector<std::uint32_t> co;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t m = 0; m < members; ++m) {
      member_coeffs_at(spec, static_cast<std::uint64_t>(m), co);
      const auto lut = TraceCounter::trace_lut(fq, co);
      for (std::uint32_t r = 1; r <= max_r; ++r) {
        std::uint64_t* out = res.counts.data() + ((static_cast<std::uint64_t>(m) * max_r) + (r - 1)) * p;
        counters[r - 1].count(lut, std::span<std::uint64_t>(out, p));
      }
    }
  }
  return res;
}

SweepResult sweep_family_reference(const FamilySpec& spec, std::uint32_t max_r, const SweepOptions& opt) {
  SweepResult res = prepare(spec, max_r, opt);
  const auto towers = build_towers(spec.p, spec.n, max_r, opt.cap);
  const std::uint32_t p = spec.p;
  for (std::uint64_t m = 0; m < res.members; ++m) {
    const PolyFq f = member_at(spec, m);
    for (std::uint32_t r = 1; r <= max_r; ++r) {
      const Field& L = towers[r - 1].top();
      std::uint64_t* out = res.counts.data() + ((m * max_r) + (r - 1)) * p;
      for (std::uint64_t a = 0; a < L.order(); ++a)
        ++out[L.trace_to_prime(poly_eval(L, f, static_cast<std::uint32_t>(a)))];
    }
  }
  return res;
}

}  // namespace asz
