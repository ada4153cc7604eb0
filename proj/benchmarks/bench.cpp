// Microbenchmarks for the hot paths: exact solves, simulator steps, the
// tabular learners, and the stage-game solver.

#include <benchmark/benchmark.h>

#include "mq/config.hpp"
#include "mq/dp.hpp"
#include "mq/env.hpp"
#include "mq/game.hpp"
#include "mq/nash.hpp"
#include "mq/qlearn.hpp"

namespace {

mq::ModelParams desk_model() { return mq::default_config().model; }
mq::GameParams desk_game() { return mq::default_config().game; }

void BM_ValueIterationCoarse(benchmark::State& state) {
  const auto model = mq::build_discrete_model(desk_model(), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::value_iteration(model, 1e-10));
  }
}
BENCHMARK(BM_ValueIterationCoarse);

void BM_ValueIterationFine(benchmark::State& state) {
  const auto model = mq::build_discrete_model(desk_model(), 0.001);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::value_iteration(model, 1e-10));
  }
}
BENCHMARK(BM_ValueIterationFine);

void BM_EnvStep(benchmark::State& state) {
  const auto model = mq::build_discrete_model(desk_model(), 0.1);
  mq::Environment env(model, 7, mq::State{desk_model().n_price_levels, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(env.step_index(0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep);

void BM_QlearnRun(benchmark::State& state) {
  const auto model = mq::build_discrete_model(desk_model(), 0.1);
  mq::LearnerConfig cfg = mq::default_config().qlearn_for(1);
  cfg.step_budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::run_qlearning(model, cfg, 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QlearnRun)->Arg(50000);

void BM_SolveBimatrix(benchmark::State& state) {
  const auto model = mq::build_game_model(desk_game(), 0.1);
  const auto sol = mq::game_value_iteration(model, 1e-10);
  const auto game = mq::continuation_game(model, 2, sol.v1, sol.v2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::solve_bimatrix(game));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SolveBimatrix);

void BM_GameValueIteration(benchmark::State& state) {
  const auto model = mq::build_game_model(desk_game(), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::game_value_iteration(model, 1e-10));
  }
}
BENCHMARK(BM_GameValueIteration);

void BM_NashQlearnRun(benchmark::State& state) {
  const auto model = mq::build_game_model(desk_game(), 0.1);
  mq::NashLearnerConfig cfg = mq::default_config().nashq.learner;
  cfg.step_budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mq::run_nash_qlearning(model, cfg, 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NashQlearnRun)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
