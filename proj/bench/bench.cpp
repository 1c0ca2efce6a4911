// Parallel kernels against their serial reference paths.

#include <benchmark/benchmark.h>

#include "maghom/homology.hpp"
#include "maghom/random.hpp"

using namespace maghom;

namespace {

Graph bench_graph() {
  auto rng = trial_rng(2024, 0);
  return random_girth_graph(40, 5, 3, rng);
}

void homology(benchmark::State& state, MorseMode morse, unsigned workers) {
  const Graph g = bench_graph();
  const auto lmax = static_cast<unsigned>(state.range(0));
  HomologyOptions o;
  o.morse = morse;
  o.workers = workers;
  o.shortcut_trees = false;
  for (auto _ : state) benchmark::DoNotOptimize(compute_homology(g, lmax, o));
}

void BM_HomologyBrute(benchmark::State& s) { homology(s, MorseMode::Off, 1); }
void BM_HomologyMorse(benchmark::State& s) { homology(s, MorseMode::On, 1); }
void BM_HomologyBruteParallel(benchmark::State& s) { homology(s, MorseMode::Off, 0); }
void BM_HomologyMorseParallel(benchmark::State& s) { homology(s, MorseMode::On, 0); }

void trials(benchmark::State& state, unsigned workers) {
  ErConfig cfg = ErConfig::from_c(static_cast<std::size_t>(state.range(0)), 0.9);
  cfg.trials = 200;
  cfg.workers = workers;
  for (auto _ : state) benchmark::DoNotOptimize(run_diagonality_experiment(cfg));
}

void BM_TrialsSerial(benchmark::State& s) { trials(s, 1); }
void BM_TrialsParallel(benchmark::State& s) { trials(s, 0); }

}  // namespace

BENCHMARK(BM_HomologyBrute)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologyMorse)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologyBruteParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HomologyMorseParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrialsSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
