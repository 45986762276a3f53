#include <benchmark/benchmark.h>

#include "humaq/baselines.hpp"
#include "humaq/harness.hpp"
#include "humaq/perception.hpp"
#include "humaq/qtable.hpp"
#include "humaq/rng.hpp"

using namespace humaq;

namespace {

TrialConfig reference_trial() {
  return load_trial_config(std::filesystem::path(HUMAQ_CONFIG_DIR) / "trial_indoor.json");
}

void BM_SenseLight(benchmark::State& state) {
  const auto world = reference_trial().world;
  const RobotPose pose{60, 50, 45};
  for (auto _ : state) benchmark::DoNotOptimize(sense_light(world, pose));
}
BENCHMARK(BM_SenseLight);

void BM_SenseRange(benchmark::State& state) {
  const auto world = reference_trial().world;
  const RobotPose pose{60, 50, 45};
  for (auto _ : state) benchmark::DoNotOptimize(sense_range(world, pose));
}
BENCHMARK(BM_SenseRange);

void BM_QUpdate(benchmark::State& state) {
  LearningParams params;
  QTable table = init_random(AgentId::goal, params, 1);
  Rng rng(2);
  int s = 0;
  for (auto _ : state) {
    const int a = select_action(table, s, params, rng);
    const int next = static_cast<int>(rng.below(table.n_states()));
    q_update(table, s, a, 1.0, next, params);
    s = next;
  }
}
BENCHMARK(BM_QUpdate);

void BM_ValueIteration(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const GridMDP grid = random_grid(side, side, 0.15, 3);
  for (auto _ : state) benchmark::DoNotOptimize(value_iteration(grid, 0.9, 1e-10));
}
BENCHMARK(BM_ValueIteration)->Arg(4)->Arg(8)->Arg(16);

void BM_RunSet(benchmark::State& state) {
  const TrialConfig config = reference_trial();
  const AgentTables tables = random_tables(config.learning, config.seeds.front());
  for (auto _ : state) benchmark::DoNotOptimize(run_set(config, 1, tables));
}
BENCHMARK(BM_RunSet)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
