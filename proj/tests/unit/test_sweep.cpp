#include "asz/families.hpp"
#include "asz/lfunction.hpp"
#include "asz/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asz;

class SweepAgreement : public ::testing::TestWithParam<std::tuple<FamilyKind, unsigned, unsigned, unsigned, unsigned>> {};

TEST_P(SweepAgreement, ParallelMatchesReference) {
  auto [kind, p, n, d, max_r] = GetParam();
  FamilySpec spec{kind, p, n, d};
  auto ref = sweep_family_reference(spec, max_r);
  for (int jobs : {1, 3}) {
    auto fast = sweep_family(spec, max_r, {jobs});
    EXPECT_EQ(fast.members, ref.members);
    EXPECT_EQ(fast.counts, ref.counts);
  }
}

INSTANTIATE_TEST_SUITE_P(Families, SweepAgreement,
                         ::testing::Values(std::tuple{FamilyKind::full, 3u, 1u, 4u, 5u},
                                           std::tuple{FamilyKind::full, 2u, 1u, 5u, 6u},
                                           std::tuple{FamilyKind::full, 2u, 2u, 3u, 3u},
                                           std::tuple{FamilyKind::full, 5u, 1u, 3u, 3u},
                                           std::tuple{FamilyKind::odd, 3u, 1u, 7u, 3u},
                                           std::tuple{FamilyKind::monic_all, 3u, 1u, 3u, 3u},
                                           std::tuple{FamilyKind::full, 3u, 2u, 2u, 2u}));

TEST(Sweep, CountsSumToFieldSize) {
  auto sw = sweep_family({FamilyKind::full, 3, 1, 5}, 4);
  for (std::uint64_t m = 0; m < sw.members; ++m)
    for (std::uint32_t r = 1; r <= 4; ++r) {
      std::uint64_t s = 0;
      for (auto c : sw.at(m, r)) s += c;
      ASSERT_EQ(s, static_cast<std::uint64_t>(std::pow(3, r)));
    }
}

TEST(Sweep, MatchesDirectCharacterSums) {
  FamilySpec spec{FamilyKind::full, 3, 1, 4};
  auto sw = sweep_family(spec, 3);
  auto towers = build_towers(3, 1, 3);
  for (std::uint64_t m = 0; m < sw.members; ++m) {
    auto direct = char_sums(member_at(spec, m), 1, towers, 3);
    EXPECT_EQ(direct.sums, char_sums(sw, m, 1, 3));
  }
}

TEST(Sweep, CapIsEnforced) {
  EXPECT_THROW(sweep_family({FamilyKind::full, 3, 1, 4}, 12, {1, 1000}), CapExceeded);
}
