#include "asz/families.hpp"
#include "asz/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace asz;

namespace {

const FamilySpec kSpec{FamilyKind::full, 3, 1, 7};
constexpr std::uint32_t kMaxR = 6;

void BM_SweepReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_family_reference(kSpec, kMaxR).counts.data());
}

void BM_SweepKernel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_family(kSpec, kMaxR, {jobs}).counts.data());
}

}  // namespace

BENCHMARK(BM_SweepReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepKernel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
