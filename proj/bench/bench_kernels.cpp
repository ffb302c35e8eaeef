#include <benchmark/benchmark.h>

#include "gaussweyl/bounds.hpp"
#include "gaussweyl/plane_map.hpp"

using namespace gaussweyl;

namespace {

const Window kWindow{0.0, 3.0, -3.5, 3.5};
const ExponentConfig kCfg(1.5, 3.0, 1.0, 1.0, 1);

void BM_SampleRegionParallel(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_region(region::TheoremMain{kCfg}, kWindow, res));
  state.SetItemsProcessed(state.iterations() * res * res);
}

void BM_SampleRegionSerial(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::sample_region(region::TheoremMain{kCfg}, kWindow, res));
  state.SetItemsProcessed(state.iterations() * res * res);
}

void BM_PqFuzzParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_pq_identities(state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PqFuzzSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::fuzz_pq_identities(state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct SchurInputs {
  LogKernel kernel = log_kernel(kernel_of_gaussian_symbol(WeylParameter(cplx{0.6, 0.2}), 1));
  LogWeight weight = log_weight(GaussianMeasure{1.0, 1});
  QuadratureSpec quad = QuadratureSpec::trapezoid(24.0, 2401);
};

void BM_NumericSchurParallel(benchmark::State& state) {
  const SchurInputs in;
  for (auto _ : state) benchmark::DoNotOptimize(numeric_schur(in.kernel, in.weight, in.weight, kCfg, in.quad));
}

void BM_NumericSchurSerial(benchmark::State& state) {
  const SchurInputs in;
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::numeric_schur(in.kernel, in.weight, in.weight, kCfg, in.quad));
  }
}

}  // namespace

BENCHMARK(BM_SampleRegionSerial)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleRegionParallel)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PqFuzzSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PqFuzzParallel)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NumericSchurSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NumericSchurParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
