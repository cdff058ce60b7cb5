#include <benchmark/benchmark.h>

#include "mdmt/exact.hpp"
#include "mdmt/heuristics.hpp"
#include "mdmt/pool.hpp"

namespace {

using namespace mdmt;

Instance two_depots(int n) {
  GeneratorParams params;
  params.n = n;
  return preprocess_unreachable(generate_random_instance(params, 1)).instance;
}

Instance four_depots(int n) {
  GeneratorParams params;
  params.n = n;
  params.corners = {Corner::LowerLeft, Corner::LowerRight, Corner::UpperRight, Corner::UpperLeft};
  params.fleets = {{8, 50.0}, {4, 30.0}, {2, 40.0}, {1, 20.0}};
  return preprocess_unreachable(generate_random_instance(params, 1)).instance;
}

void BM_Generate(benchmark::State& state) {
  GeneratorParams params;
  params.n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_random_instance(params, 7));
  }
}
BENCHMARK(BM_Generate)->Arg(20)->Arg(200);

void BM_Enumerate(benchmark::State& state) {
  const Instance inst = two_depots(static_cast<int>(state.range(0)));
  std::size_t size = 0;
  for (auto _ : state) {
    size = enumerate_all_feasible(inst, kUnlimited).size();
  }
  state.counters["pool"] = static_cast<double>(size);
}
BENCHMARK(BM_Enumerate)->Arg(10)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_HeuristicPool(benchmark::State& state) {
  const Instance inst = two_depots(static_cast<int>(state.range(0)));
  const int children = static_cast<int>(state.range(1));
  std::size_t size = 0;
  for (auto _ : state) {
    size = generate_heuristic_pool(inst, children, 200'000).size();
  }
  state.counters["pool"] = static_cast<double>(size);
}
BENCHMARK(BM_HeuristicPool)
  ->Args({20, 3})
  ->Args({20, 6})
  ->Args({100, 3})
  ->Args({200, 3})
  ->Unit(benchmark::kMillisecond);

void BM_ExactCompletionTime(benchmark::State& state) {
  const Instance inst = two_depots(static_cast<int>(state.range(0)));
  const SequencePool pool = enumerate_all_feasible(inst, kUnlimited);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(pool, inst, Objective::CompletionTime, ExactOptions{}));
  }
}
BENCHMARK(BM_ExactCompletionTime)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_ExactTravel(benchmark::State& state) {
  const Instance inst = two_depots(static_cast<int>(state.range(0)));
  const SequencePool pool = enumerate_all_feasible(inst, kUnlimited);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(pool, inst, Objective::TotalTravelDistance, ExactOptions{}));
  }
}
BENCHMARK(BM_ExactTravel)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_HTsp(benchmark::State& state) {
  const Instance inst = four_depots(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_h_tsp(inst));
  }
}
BENCHMARK(BM_HTsp)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_HGreedy(benchmark::State& state) {
  const Instance inst = four_depots(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_h_greedy(inst));
  }
}
BENCHMARK(BM_HGreedy)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MinMakespanAssignment(benchmark::State& state) {
  const Instance inst = four_depots(60);
  const auto greedy = solve_h_greedy(inst);
  std::vector<Sequence> selected;
  for (const Trip& t : greedy.solution->trips) {
    selected.push_back(t.sequence);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_min_makespan(selected, inst));
  }
  state.counters["trips"] = static_cast<double>(selected.size());
}
BENCHMARK(BM_MinMakespanAssignment)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
