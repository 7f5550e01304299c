#include <benchmark/benchmark.h>
#include <omp.h>

#include "nabas/berkovich.hpp"
#include "nabas/config.hpp"

using namespace nabas;

namespace {

void BM_ScanParallel(benchmark::State& state) {
  Representation rep = preset("ex51").representation();
  int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_terms(rep, len, false));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_ScanReference(benchmark::State& state) {
  Representation rep = preset("ex51").representation();
  int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_terms_reference(rep, len, false));
}

void BM_GeometricTerms(benchmark::State& state) {
  Representation rep = preset("ex51").representation();
  int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometric_terms(rep, len, false));
}

void BM_EnumerateParallel(benchmark::State& state) {
  BoundarySystem sys = boundary_words({1, 1});
  int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_double_cosets(sys, 0, 0, len));
}

void BM_EnumerateReference(benchmark::State& state) {
  BoundarySystem sys = boundary_words({1, 1});
  int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_double_cosets_reference(sys, 0, 0, len));
}

}  // namespace

BENCHMARK(BM_ScanParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanReference)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeometricTerms)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateReference)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
