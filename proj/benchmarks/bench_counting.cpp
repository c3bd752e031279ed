#include <benchmark/benchmark.h>

#include "qforge/counting.hpp"
#include "qforge/factor.hpp"

using namespace qf;

static void BM_CountPoints(benchmark::State& state) {
  u64 p = next_prime_above(static_cast<u64>(state.range(0)));
  SplitCurve<FpElement> c(fp(0, p), fp(1, p), fp(p - 1, p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_points(c));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountPoints)->Arg(1000)->Arg(10000)->Arg(100000)->Arg(1000000)
    ->Complexity(benchmark::oN);

static void BM_EnumeratePoints(benchmark::State& state) {
  u64 p = next_prime_above(static_cast<u64>(state.range(0)));
  SplitCurve<FpElement> c(fp(0, p), fp(1, p), fp(p - 1, p));
  for (auto _ : state) {
    auto pts = enumerate_points(c);
    benchmark::DoNotOptimize(pts.size());
  }
}
BENCHMARK(BM_EnumeratePoints)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_GroupAdd(benchmark::State& state) {
  u64 p = 1000003;
  SplitCurve<FpElement> c(fp(0, p), fp(1, p), fp(p - 1, p));
  // x = 3: rhs = 3*2*4 = 24; find a point by scanning
  CurvePoint<FpElement> pt;
  FpField f(p);
  for (u64 x = 2;; ++x) {
    u64 rhs = f.mul(f.mul(x, f.sub(x, 1)), f.add(x, 1));
    auto r = f.sqrt(rhs);
    if (r) {
      pt = CurvePoint<FpElement>::affine(fp(x, p), fp(*r, p));
      break;
    }
  }
  CurvePoint<FpElement> acc = pt;
  for (auto _ : state) {
    acc = add_unchecked(c, acc, pt);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_GroupAdd);

BENCHMARK_MAIN();
