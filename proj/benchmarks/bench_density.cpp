#include <benchmark/benchmark.h>

#include "qforge/density.hpp"
#include "qforge/factor.hpp"
#include "qforge/json_io.hpp"

using namespace qf;

static void BM_MultiquadraticScan(benchmark::State& state) {
  u64 p = next_prime_above(static_cast<u64>(state.range(0)));
  auto fbar = reduce_quartic(parse_quartic("0,1/4,1/9,-1"), FpField(p));
  std::vector<LinearFormFp> forms{{1, 0}, {3, 5}, {7, 11}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiquadratic_count(fbar, forms).count);
  }
}
BENCHMARK(BM_MultiquadraticScan)->Arg(1009)->Arg(10007)->Arg(100003);

static void BM_QuarticGroupBuild(benchmark::State& state) {
  u64 p = next_prime_above(static_cast<u64>(state.range(0)));
  auto fbar = reduce_quartic(parse_quartic("0,1/4,1/9,-1"), FpField(p));
  for (auto _ : state) {
    QuarticGroup group(fbar);
    benchmark::DoNotOptimize(group.group_order());
  }
}
BENCHMARK(BM_QuarticGroupBuild)->Arg(1009)->Arg(10007);

static void BM_AvoidanceSearch(benchmark::State& state) {
  u64 p = next_prime_above(static_cast<u64>(state.range(0)));
  auto fbar = reduce_quartic(parse_quartic("0,1/4,1/9,-1"), FpField(p));
  QuarticGroup group(fbar);
  std::vector<std::vector<LinearFormFp>> sigmas{{{1, 0}, {2, 3}}, {{1, 5}, {3, 1}}};
  u64 seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(avoidance_search(group, sigmas, 2, 4000, seed++));
  }
}
BENCHMARK(BM_AvoidanceSearch)->Arg(211)->Arg(1009);

BENCHMARK_MAIN();
