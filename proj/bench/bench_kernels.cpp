// Serial reference against the OpenMP kernels. Arg 0 runs serially, 1 with OpenMP
// (thread count from QUATREG_THREADS or the OpenMP default).

#include <benchmark/benchmark.h>

#include "quatreg/catalog.hpp"
#include "quatreg/integral.hpp"
#include "quatreg/regularity.hpp"

namespace {

using namespace quatreg;

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::OpenMP : Execution::Serial; }

void BM_RegularitySweep(benchmark::State& state) {
  const QFunction f = arctan_example(1);
  const auto pts = samples_for(f, SampleDomain{}, 2000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(regularity_verdict(f, pts, 1e-8, {}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_VolumeIntegral(benchmark::State& state) {
  const auto K = sphere3(Quaternion(0, 2, 1, 1), 1.0, 16);
  const QFunction f = power(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(volume_integral([&](const Quaternion& p) { return f(p); }, K, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(K.volume_size()));
}

void BM_IntegralIdentity(benchmark::State& state) {
  const auto K = sphere3(Quaternion(0, 2, 1, 1), 1.0, 10);
  const QFunction f = power(3);
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_residual(f, K, {}, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_RegularitySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegralIdentity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
