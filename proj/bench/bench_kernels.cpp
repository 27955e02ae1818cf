// Serial-vs-OpenMP comparison of the two hot kernels: the permutation-test
// null loop and the sampler. Build target octe_bench; not part of ctest.
//
//   ./bench/octe_bench --benchmark_min_time=0.5s

#include <benchmark/benchmark.h>

#include "octe/inference.hpp"
#include "octe/systems.hpp"

namespace {

using namespace octe;

DataMatrix bench_data(std::int64_t rows) {
  return sample_serial(make_mediated_xor_system(2, 3).spec, rows, 1);
}

void BM_NullCountSerial(benchmark::State& state) {
  const auto rows = static_cast<std::int64_t>(state.range(0));
  const int replicates = static_cast<int>(state.range(1));
  const DataMatrix data = bench_data(rows);
  const detail::PermutationProblem problem = detail::build_problem(
      data, VarSet::single(0), 3, VarSet::of({1, 2}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        detail::null_exceed_count_serial(problem, replicates, 7, 0));
  }
  state.SetItemsProcessed(state.iterations() * replicates * rows);
}

void BM_NullCountParallel(benchmark::State& state) {
  const auto rows = static_cast<std::int64_t>(state.range(0));
  const int replicates = static_cast<int>(state.range(1));
  const DataMatrix data = bench_data(rows);
  const detail::PermutationProblem problem = detail::build_problem(
      data, VarSet::single(0), 3, VarSet::of({1, 2}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        detail::null_exceed_count_parallel(problem, replicates, 7, 0, 0));
  }
  state.SetItemsProcessed(state.iterations() * replicates * rows);
}

void BM_SampleSerial(benchmark::State& state) {
  const SystemSpec spec = make_neuron_xor_system(0.1, 0.1).spec;
  const auto rows = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_serial(spec, rows, 42));
  }
  state.SetItemsProcessed(state.iterations() * rows);
}

void BM_SampleParallel(benchmark::State& state) {
  const SystemSpec spec = make_neuron_xor_system(0.1, 0.1).spec;
  const auto rows = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(spec, rows, 42));
  }
  state.SetItemsProcessed(state.iterations() * rows);
}

BENCHMARK(BM_NullCountSerial)
    ->Args({10000, 200})
    ->Args({100000, 200})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullCountParallel)
    ->Args({10000, 200})
    ->Args({100000, 200})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
