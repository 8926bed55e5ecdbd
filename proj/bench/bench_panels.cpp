// Serial reference vs OpenMP panel quadrature, timed through full curve
// construction: a sphere arc (singular right end) and an n = 4 graph on [0, 30].

#include <benchmark/benchmark.h>

#include "cmc/rotation.hpp"

namespace {

void run(benchmark::State& state, cmc::Execution ex) {
  const cmc::SurfaceParams p = state.range(0) == 0 ? cmc::SurfaceParams{2, 1.0, 0.0}
                                                   : cmc::SurfaceParams{4, 0.75, 0.0};
  const auto bp = cmc::classify_rotation(p).breakpoints;
  cmc::SampleGrid g;
  g.samples = static_cast<int>(state.range(1));
  g.execution = ex;
  for (auto _ : state) {
    auto c = cmc::sample_lambda(p, bp, g);
    benchmark::DoNotOptimize(c.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * (g.samples - 1));
}

void BM_PanelsSerial(benchmark::State& state) { run(state, cmc::Execution::Serial); }
void BM_PanelsParallel(benchmark::State& state) { run(state, cmc::Execution::Parallel); }

}  // namespace

BENCHMARK(BM_PanelsSerial)->ArgsProduct({{0, 1}, {400, 4000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PanelsParallel)
    ->ArgsProduct({{0, 1}, {400, 4000}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
