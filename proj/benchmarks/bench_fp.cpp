#include <benchmark/benchmark.h>

#include "qforge/fp.hpp"

using namespace qf;

static void BM_FpLegendre(benchmark::State& state) {
  FpField f(static_cast<u64>(state.range(0)));
  u64 x = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.legendre(x));
    x = x % (f.p() - 1) + 1;
  }
}
BENCHMARK(BM_FpLegendre)->Arg(1009)->Arg(1000003);

static void BM_FpSqrt(benchmark::State& state) {
  FpField f(static_cast<u64>(state.range(0)));
  u64 x = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.sqrt(f.mul(x, x)));
    x = x % (f.p() - 2) + 2;
  }
}
BENCHMARK(BM_FpSqrt)->Arg(1009)->Arg(1000003);

static void BM_SquareTableBuild(benchmark::State& state) {
  FpField f(static_cast<u64>(state.range(0)));
  for (auto _ : state) {
    SquareTable table(f);
    benchmark::DoNotOptimize(table.is_qr(2));
  }
}
BENCHMARK(BM_SquareTableBuild)->Arg(1009)->Arg(100003)->Arg(1000003);

BENCHMARK_MAIN();
