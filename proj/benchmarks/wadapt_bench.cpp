#include "wadapt/ansatz.h"
#include "wadapt/warmstart.h"

#include <benchmark/benchmark.h>

using namespace wadapt;

static void BM_CostPhase(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = random_regular(n, 3, true, 1);
  const auto d = cost_diagonal(g);
  StateVector s = uniform_state(n);
  for (auto _ : state) {
    apply_cost_phase_inplace(s, 0.3, d);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dim()));
}
BENCHMARK(BM_CostPhase)->DenseRange(8, 16, 4);

static void BM_StandardMixer(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = MixerOp::standard(n);
  StateVector s = uniform_state(n);
  for (auto _ : state) {
    apply_mixer_exp_inplace(s, 0.2, m);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_StandardMixer)->DenseRange(8, 16, 4);

static void BM_AdjustedMixer(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  BlochAngles a;
  for (int j = 0; j < n; ++j)
    a.push_back({0.2 + 0.1 * j, 0.3 * j});
  const auto m = adjusted_mixer(a);
  StateVector s = product_state(a);
  for (auto _ : state) {
    apply_mixer_exp_inplace(s, 0.2, m);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_AdjustedMixer)->DenseRange(8, 16, 4);

static void BM_SelectMixer(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = random_regular(n, 3, true, 2);
  const auto d = cost_diagonal(g);
  const auto pool = build_pool(n);
  const auto s = uniform_state(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(select_mixer(s, d, pool, 0.01));
  state.counters["pool"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_SelectMixer)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_WarmStart(benchmark::State &state) {
  const Graph g = random_regular(8, 5, true, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(best_warm_state(g, solve_bm_rank3(g, SgdConfig{}, 3)));
}
BENCHMARK(BM_WarmStart)->Unit(benchmark::kMillisecond);

static void BM_AdaptWarmRun(benchmark::State &state) {
  const Graph g = random_regular(8, 5, true, 4);
  RunConfig cfg;
  cfg.max_layers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_algorithm(Variant::adapt_warm, g, cfg));
}
BENCHMARK(BM_AdaptWarmRun)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
