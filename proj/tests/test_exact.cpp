#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mdmt/error.hpp"
#include "mdmt/exact.hpp"
#include "mdmt/heuristics.hpp"
#include "mdmt/solution.hpp"
#include "oracles.hpp"

namespace {

using namespace mdmt;

Instance reachable(const Instance& inst) {
  return preprocess_unreachable(inst).instance;
}

TEST(Exact, SingleTargetSingleVehicle) {
  const Instance inst = fixtures::line_instance({3}, {2}, {20});
  const auto pool = enumerate_all_feasible(inst, kUnlimited);
  const auto out = solve_exact(pool, inst, Objective::CompletionTime, 10.0);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_DOUBLE_EQ(out.solution->tau, 2 * 3.0 + 2.0);
  EXPECT_EQ(out.solution->trips.size(), 1u);
}

TEST(Exact, CompletionTimeMatchesPartitionOracle) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = reachable(fixtures::small_instance(seed, 1 + static_cast<int>(seed % 8)));
    if (inst.n_targets() == 0) {
      continue;
    }
    SCOPED_TRACE(seed);
    const auto out = solve_exact_full(inst, Objective::CompletionTime, {}, kUnlimited);
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    EXPECT_NEAR(out.solution->tau, oracle::optimum(inst, false), 1e-9);
    EXPECT_TRUE(validate_solution(inst, *out.solution).feasible);
    EXPECT_NEAR(out.best_lower_bound, out.solution->objective_value, 1e-12);
  }
}

TEST(Exact, TravelDistanceMatchesPartitionOracle) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = reachable(fixtures::small_instance(seed + 100, 1 + static_cast<int>(seed % 8)));
    if (inst.n_targets() == 0) {
      continue;
    }
    SCOPED_TRACE(seed);
    const auto out = solve_exact_full(inst, Objective::TotalTravelDistance, {}, kUnlimited);
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    EXPECT_NEAR(out.solution->objective_value, oracle::optimum(inst, true), 1e-9);
    EXPECT_NEAR(total_travel_distance(*out.solution, inst), out.solution->objective_value, 1e-9);
  }
}

TEST(Exact, AgreesWithAndWithoutMemoAndLocalSearch) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = reachable(fixtures::small_instance(seed + 300, 8));
    const auto pool = enumerate_all_feasible(inst, kUnlimited);
    for (Objective obj : {Objective::CompletionTime, Objective::TotalTravelDistance}) {
      ExactOptions plain;
      plain.memo = false;
      plain.local_search = false;
      const auto a = solve_exact(pool, inst, obj, plain);
      const auto b = solve_exact(pool, inst, obj, ExactOptions{});
      ExactOptions warm;
      warm.greedy_warm_start = true;
      const auto c = solve_exact(pool, inst, obj, warm);
      EXPECT_NEAR(a.solution->objective_value, b.solution->objective_value, 1e-9);
      EXPECT_NEAR(a.solution->objective_value, c.solution->objective_value, 1e-9);
    }
  }
}

TEST(Exact, IdenticalVehiclesDoNotChangeTheOptimum) {
  // Same depot and budget for all three vehicles exercises the symmetry skip.
  std::vector<TargetNode> targets;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 7; ++i) {
    targets.push_back({i, static_cast<double>(rng() % 900) / 100.0,
                       static_cast<double>(rng() % 900) / 100.0, 1.0 + static_cast<double>(rng() % 300) / 100.0});
  }
  const Instance inst(targets, {{0, 0.0, 0.0}}, {{1, 0, 30.0}, {2, 0, 30.0}, {3, 0, 30.0}}, 1.0);
  const auto out = solve_exact_full(reachable(inst), Objective::CompletionTime, {}, kUnlimited);
  EXPECT_NEAR(out.solution->tau, oracle::optimum(reachable(inst), false), 1e-9);
}

TEST(Exact, NodeBoundNeverExceedsReachableOptimum) {
  // Walk the trips of an optimal solution one at a time; the optimum stays
  // reachable from every such state, so the bound must not exceed it.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = reachable(fixtures::small_instance(seed + 200, 7));
    const auto pool = enumerate_all_feasible(inst, kUnlimited);
    for (Objective obj : {Objective::CompletionTime, Objective::TotalTravelDistance}) {
      const bool td = obj == Objective::TotalTravelDistance;
      const double best = oracle::optimum(inst, td);
      const auto out = solve_exact(pool, inst, obj, ExactOptions{});
      std::vector<char> covered(inst.n_targets(), 0);
      std::vector<double> loads(inst.n_vehicles(), 0.0);
      double committed = 0.0;
      EXPECT_LE(detail::node_lower_bound(pool, inst, obj, covered, loads, committed), best + 1e-9);
      for (const Trip& trip : out.solution->trips) {
        for (int i : trip.sequence.nodes()) {
          covered[i] = 1;
        }
        loads[trip.vehicle] += trip.duration;
        committed += trip.duration - trip.sequence.service();
        EXPECT_LE(detail::node_lower_bound(pool, inst, obj, covered, loads, committed), best + 1e-9);
      }
    }
  }
}

TEST(Exact, NodeBoundIsInfiniteWhenATargetCannotBeCovered) {
  const Instance inst = fixtures::line_instance({1, 2}, {1, 1}, {100});
  SequencePool pool(2);
  pool.offer(*make_entry(inst, Sequence(inst, {0})));
  pool.compact();
  std::vector<char> covered{0, 0};
  std::vector<double> loads{0.0};
  EXPECT_TRUE(std::isinf(detail::node_lower_bound(pool, inst, Objective::CompletionTime, covered, loads, 0.0)));
}

TEST(Exact, PoolMissingATargetIsReported) {
  const Instance inst = fixtures::line_instance({1, 2}, {1, 1}, {100});
  SequencePool pool(2);
  pool.offer(*make_entry(inst, Sequence(inst, {0})));
  pool.compact();
  const auto out = solve_exact(pool, inst, Objective::CompletionTime, 5.0);
  EXPECT_EQ(out.status, SolveStatus::PoolInsufficient);
  EXPECT_FALSE(out.solution.has_value());
}

TEST(Exact, NodeLimitGivesFeasibleAnswerAndValidBound) {
  GeneratorParams params;
  params.n = 24;
  const Instance inst = reachable(generate_random_instance(params, 11));
  const auto pool = enumerate_all_feasible(inst, kUnlimited);
  ExactOptions limited;
  limited.node_limit = 200;
  limited.local_search = false;
  const auto cut = solve_exact(pool, inst, Objective::CompletionTime, limited);
  ASSERT_EQ(cut.status, SolveStatus::FeasibleTimeLimit);
  EXPECT_TRUE(validate_solution(inst, *cut.solution).feasible);
  const auto full = solve_exact(pool, inst, Objective::CompletionTime, ExactOptions{});
  ASSERT_EQ(full.status, SolveStatus::Optimal);
  EXPECT_LE(cut.best_lower_bound, full.solution->tau + 1e-9);
  EXPECT_GE(cut.solution->tau, full.solution->tau - 1e-9);
}

TEST(Exact, ZeroTimeLimitStillAnswers) {
  GeneratorParams params;
  params.n = 30;
  const Instance inst = reachable(generate_random_instance(params, 3));
  ExactOptions options;
  options.time_limit = 0.0;
  const auto out = solve_exact_full(inst, Objective::CompletionTime, options, kUnlimited);
  EXPECT_EQ(out.status, SolveStatus::FeasibleTimeLimit);
  ASSERT_TRUE(out.solution.has_value());
  EXPECT_TRUE(validate_solution(inst, *out.solution).feasible);
  EXPECT_LE(out.best_lower_bound, out.solution->objective_value);
}

TEST(Exact, EnumerationCapFallsBack) {
  GeneratorParams params;
  params.n = 15;
  const Instance inst = reachable(generate_random_instance(params, 3));
  const auto out = solve_exact_full(inst, Objective::CompletionTime, {}, 10);
  EXPECT_TRUE(out.cap_hit);
  EXPECT_EQ(out.status, SolveStatus::FeasibleTimeLimit);
  EXPECT_TRUE(validate_solution(inst, *out.solution).feasible);
}

TEST(Exact, TimeLimitedLargeInstanceNeverCrashes) {
  GeneratorParams params;
  params.n = 200;
  params.corners = {Corner::LowerLeft, Corner::LowerRight, Corner::UpperRight, Corner::UpperLeft};
  params.fleets = {{2, 50}, {2, 30}, {2, 40}, {2, 20}};
  const Instance inst = reachable(generate_random_instance(params, 1));
  ExactOptions options;
  options.time_limit = 1.0;
  const auto out = solve_exact_full(inst, Objective::CompletionTime, options, 2'000'000);
  EXPECT_TRUE(out.status == SolveStatus::FeasibleTimeLimit || out.status == SolveStatus::Optimal);
  EXPECT_TRUE(validate_solution(inst, *out.solution).feasible);
}

TEST(Exact, NoTargets) {
  const Instance inst({}, {{1, 0, 0}}, {{1, 0, 10}}, 1.0);
  const auto out = solve_exact_full(inst, Objective::CompletionTime, {}, kUnlimited);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_TRUE(out.solution->trips.empty());
  EXPECT_DOUBLE_EQ(out.solution->tau, 0.0);
}

TEST(Exact, ParseObjective) {
  EXPECT_EQ(parse_objective("ct"), Objective::CompletionTime);
  EXPECT_EQ(parse_objective("td"), Objective::TotalTravelDistance);
  EXPECT_FALSE(parse_objective("fastest").has_value());
  EXPECT_STREQ(to_string(SolveStatus::FeasibleTimeLimit), "FEASIBLE_TIME_LIMIT");
}

TEST(Assignment, PrefersTheShorterTrip) {
  // Two depots at x = 0 and x = 10, target at x = 8.
  const Instance inst({{1, 8, 0, 1}}, {{1, 0, 0}, {2, 10, 0}}, {{1, 0, 100}, {2, 1, 100}}, 1.0);
  const std::vector<Sequence> seqs{Sequence(inst, {0})};
  const auto a = assign_min_makespan(seqs, inst);
  EXPECT_EQ(a.vehicle_of[0], 1);
  EXPECT_DOUBLE_EQ(a.tau, 5.0);
}

TEST(Assignment, RepeatedSequenceOnOneVehicle) {
  const Instance inst = fixtures::line_instance({2}, {1}, {100});
  const std::vector<Sequence> seqs(4, Sequence(inst, {0}));
  EXPECT_DOUBLE_EQ(assign_min_makespan(seqs, inst).tau, 4 * 5.0);
}

TEST(Assignment, MatchesExhaustiveAssignment) {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = reachable(fixtures::small_instance(seed + 500, 6));
    const auto pool = enumerate_all_feasible(inst, kUnlimited);
    const int count = 1 + static_cast<int>(rng() % 6);
    std::vector<Sequence> seqs;
    std::vector<std::vector<int>> orders;
    for (int c = 0; c < count; ++c) {
      const auto& e = pool.entry(static_cast<int>(rng() % pool.size()));
      seqs.push_back(e.sequence);
      orders.push_back(e.sequence.nodes());
    }
    const auto a = assign_min_makespan(seqs, inst);
    EXPECT_NEAR(a.tau, oracle::min_makespan(inst, orders), 1e-9);
    for (int c = 0; c < count; ++c) {
      EXPECT_TRUE(is_compatible(inst, seqs[c], a.vehicle_of[c]));
    }
  }
}

TEST(Assignment, ThrowsWhenASequenceFitsNoVehicle) {
  const Instance inst = fixtures::line_instance({2, 30}, {1, 1}, {10});
  const std::vector<Sequence> seqs{Sequence(inst, {1})};
  EXPECT_THROW(assign_min_makespan(seqs, inst), InputError);
}

} // namespace
