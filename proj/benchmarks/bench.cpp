#include <benchmark/benchmark.h>

#include "mcg/dataset.hpp"
#include "mcg/homology.hpp"

namespace {

void BM_EnumerateAll(benchmark::State& state) {
  const long long g = state.range(0);
  for (auto _ : state) {
    auto all = mcg::enumerate_all(g);
    benchmark::DoNotOptimize(all);
  }
}
BENCHMARK(BM_EnumerateAll)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EnumerateOrder(benchmark::State& state) {
  const long long g = state.range(0);
  for (auto _ : state) {
    auto sets = mcg::enumerate_data_sets(g, 4 * g + 2);
    benchmark::DoNotOptimize(sets);
  }
}
BENCHMARK(BM_EnumerateOrder)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RotationOrder(benchmark::State& state) {
  const long long g = state.range(0);
  mcg::IntMatrix r = mcg::rotation_matrix(g);
  for (auto _ : state) {
    auto order = mcg::order_on_homology(r);
    benchmark::DoNotOptimize(order);
  }
}
BENCHMARK(BM_RotationOrder)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MatrixPower(benchmark::State& state) {
  const long long g = state.range(0);
  mcg::SkewForm form = mcg::intersection_form(mcg::polygon_word(g));
  const int dim = static_cast<int>(2 * g);
  mcg::IntMatrix f = mcg::IntMatrix::identity(dim);
  auto chain = [&](long long i, long long q) {
    std::vector<mcg::Int> c(dim);
    if (i < 2 * g) {
      c[i - 1] = 1;
      c[i] = 1;
    } else {
      c[dim - 1] = 1;
      c[0] = -1;
    }
    return mcg::transvection(form, c, q);
  };
  for (long long i = 1; i <= 2 * g; i += 2) f = f * chain(i, 1);
  for (long long i = 2; i <= 2 * g; i += 2) f = f * chain(i, -1);
  for (auto _ : state) {
    auto p = f.pow(64);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_MatrixPower)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
