#include <benchmark/benchmark.h>

#include "qforge/coloring.hpp"

using namespace qf;

static void BM_LineEnumeration(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) {
    u64 count = 0;
    enumerate_lines(n, [&](const CombinatorialLine&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_LineEnumeration)->Arg(4)->Arg(6)->Arg(8);

static void BM_MonochromaticSearchFp(benchmark::State& state) {
  u64 p = 10007;
  size_t n = static_cast<size_t>(state.range(0));
  std::array<FpElement, 4> c{fp(0, p), fp(13, p), fp(2, p), fp(p - 1, p)};
  std::vector<FpElement> b;
  for (size_t j = 0; j < n; ++j) b.push_back(fp(j + 1, p));
  u64 l = 1;
  for (auto _ : state) {
    ColoringSpec<FpElement> spec(fp(l++, p), b, c);
    benchmark::DoNotOptimize(find_monochromatic_line(spec));
  }
}
BENCHMARK(BM_MonochromaticSearchFp)->Arg(2)->Arg(4)->Arg(6);

static void BM_LineValuesQ(benchmark::State& state) {
  ColoringSpec<Rational> spec(
      Rational(2), {Rational(1), Rational(3), Rational(-2)},
      {Rational(0), make_rational(1, 4), make_rational(1, 9), Rational(-1)});
  CombinatorialLine line{{0, 1, 0}, {1, 0, 1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_values(spec, line));
  }
}
BENCHMARK(BM_LineValuesQ);

BENCHMARK_MAIN();
