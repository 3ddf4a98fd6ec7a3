// Serial reference against the OpenMP path for the parallel kernels.
// Run with OMP_NUM_THREADS set to the core count of interest.

#include <benchmark/benchmark.h>

#include <cmath>

#include "lawnsec/experiments.hpp"

using namespace lawnsec;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_Sweep(benchmark::State& state) {
  const ScenarioConfig cfg;
  const std::vector<Scheme> schemes{Scheme::Stackelberg, Scheme::Nash, Scheme::Average,
                                    Scheme::Random};
  for (auto _ : state) {
    auto rows = run_sweep(cfg, SweepParam::RisElements, {8, 10, 12, 14, 16}, 4, schemes, mode(state));
    benchmark::DoNotOptimize(rows);
  }
}

void BM_Uniqueness(benchmark::State& state) {
  const ScenarioConfig cfg;
  const IsacGame game = make_game(cfg, cfg.seed);
  const SolverOptions opt = solver_options(cfg);
  for (auto _ : state) {
    auto rep = uniqueness_probe(game, opt, 10, cfg.seed, mode(state));
    benchmark::DoNotOptimize(rep);
  }
}

void BM_GaMaximize(benchmark::State& state) {
  const ScenarioConfig cfg;
  const IsacGame game = make_game(cfg, cfg.seed);
  const Box box = game.g_box();
  auto f = [&](double g) { return game.evaluate({0.45, g, 0.0}).u.u_ris; };
  for (auto _ : state) {
    auto r = ga_maximize(f, box, ga_options(cfg), 1, mode(state));
    benchmark::DoNotOptimize(r);
  }
}

void BM_AoiValidate(benchmark::State& state) {
  AoiValidateOptions opt;
  opt.n_deliveries = 200'000;
  for (auto _ : state) {
    auto rows = run_aoi_validate(opt, mode(state));
    benchmark::DoNotOptimize(rows);
  }
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP path.
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Uniqueness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GaMaximize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AoiValidate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
