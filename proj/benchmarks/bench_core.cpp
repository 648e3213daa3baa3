#include "superflag/atlas.hpp"
#include "superflag/classifier.hpp"

#include <benchmark/benchmark.h>

using namespace superflag;

static void BM_GrassmannMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  GrassmannElement a(n), b(n);
  for (int i = 1; i <= n; ++i) {
    a += GrassmannElement::generator(n, i) * rng.small_nonzero();
    b += GrassmannElement::monomial(n, (1ull << (i - 1)) | 1ull, rng.small_nonzero());
  }
  a += GrassmannElement::constant(n, Rational(2));
  b += GrassmannElement::constant(n, make_rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GrassmannMul)->Arg(4)->Arg(8)->Arg(12);

static void BM_SuperMatrixInverse(benchmark::State& state) {
  FlagType ft = FlagType::make(Series::GL, 3, 2, {2, 1}, {1, 0});
  auto charts = enumerate_charts(ft);
  int gens = chart_odd_coord_count(ft);
  ChartPoint p = sample_point(ft, charts[0], 1, gens, charts);
  for (auto _ : state)
    for (const auto& mat : transition(ft, charts[1], p).mats)
      benchmark::DoNotOptimize(mat);
}
BENCHMARK(BM_SuperMatrixInverse);

static void BM_Classify(benchmark::State& state) {
  FlagType ft = FlagType::make(Series::GL, 4, 4, {3, 2, 1}, {2, 1, 0});
  get_algebra(Series::GL, 4, 4);  // build outside the loop
  for (auto _ : state) benchmark::DoNotOptimize(classify_h0(ft));
}
BENCHMARK(BM_Classify);

static void BM_RootDecomposition(benchmark::State& state) {
  const LieSuperAlgebra& g = get_algebra(Series::OSP, 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(root_decomposition(g));
}
BENCHMARK(BM_RootDecomposition);

BENCHMARK_MAIN();
