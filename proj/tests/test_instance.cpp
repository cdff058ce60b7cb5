#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mdmt/error.hpp"
#include "mdmt/instance.hpp"
#include "oracles.hpp"

namespace {

using namespace mdmt;

TEST(Travel, IdenticalNodeIsZero) {
  const Instance inst = fixtures::line_instance({3}, {1}, {10});
  EXPECT_DOUBLE_EQ(travel_time(inst, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(travel_time(inst, 1, 1), 0.0);
}

TEST(Travel, RightTriangle) {
  const Instance inst({{1, 3, 4, 1}}, {{1, 0, 0}}, {{1, 0, 20}}, 1.0);
  EXPECT_DOUBLE_EQ(travel_time(inst, 0, 1), 5.0);
  EXPECT_DOUBLE_EQ(travel_time(inst, 1, 0), 5.0);
}

TEST(Travel, SquareDiagonal) {
  const Instance inst({{1, 15, 15, 1}}, {{1, 0, 0}}, {{1, 0, 50}}, 1.0);
  EXPECT_NEAR(travel_time(inst, 0, 1), 15.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(travel_time(inst, 0, 1), 21.2132034356, 1e-9);
}

TEST(Travel, SpeedScalesTime) {
  const Instance inst({{1, 3, 4, 1}}, {{1, 0, 0}}, {{1, 0, 20}}, 0.5);
  EXPECT_DOUBLE_EQ(travel_time(inst, 0, 1), 10.0);
}

TEST(Travel, UnknownNodeThrows) {
  const Instance inst = fixtures::line_instance({3}, {1}, {10});
  EXPECT_THROW(travel_time(inst, 0, 2), InputError);
  EXPECT_THROW(travel_time(inst, -1, 0), InputError);
}

TEST(InstanceCtor, RejectsBadInput) {
  EXPECT_THROW(Instance({{1, 0, 0, 1}}, {{1, 0, 0}}, {{1, 3, 10}}, 1.0), InputError);
  EXPECT_THROW(Instance({{1, 0, 0, 1}}, {{1, 0, 0}}, {{1, 0, 10}}, 0.0), InputError);
  EXPECT_THROW(Instance({{1, 0, 0, -1}}, {{1, 0, 0}}, {{1, 0, 10}}, 1.0), InputError);
  EXPECT_THROW(Instance({{1, 0, 0, 1}, {1, 1, 0, 1}}, {{1, 0, 0}}, {{1, 0, 10}}, 1.0), InputError);
  EXPECT_THROW(Instance({{1, 0, 0, 1}}, {}, {}, 1.0), InputError);
  EXPECT_THROW(Instance({{1, 0, 0, 1}}, {{1, 0, 0}}, {{1, 0, 10}}, 1.0, {{0, 1}, {1, 0}, {1, 1}}),
               InputError);
}

TEST(InstanceCtor, ExplicitMatrixAndLookups) {
  const Instance inst({{7, 0, 0, 1}, {9, 0, 0, 2}}, {{3, 0, 0}}, {{4, 0, 10}}, 1.0,
                      {{0, 2, 1}, {3, 0, 1}, {1, 1, 0}});
  EXPECT_TRUE(inst.has_explicit_matrix());
  EXPECT_DOUBLE_EQ(inst.travel(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(inst.travel(1, 0), 3.0);
  EXPECT_EQ(inst.target_index(9), 1);
  EXPECT_EQ(inst.depot_index(3), 0);
  EXPECT_EQ(inst.vehicle_index(4), 0);
  EXPECT_FALSE(inst.target_index(8).has_value());
  EXPECT_DOUBLE_EQ(inst.max_budget(), 10.0);
}

TEST(InstanceCtor, WithTargetsKeepsGeometry) {
  const Instance inst = fixtures::line_instance({1, 2, 4}, {1, 2, 3}, {50});
  const std::vector<int> keep{2, 0};
  const Instance sub = inst.with_targets(keep);
  ASSERT_EQ(sub.n_targets(), 2);
  EXPECT_EQ(sub.targets()[0].id, 3);
  EXPECT_DOUBLE_EQ(sub.travel(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(sub.travel(0, sub.depot_node(0)), 4.0);
}

TEST(Generator, TwoDepotDefaults) {
  GeneratorParams params; // defaults: 20 targets, corners LL/LR, budgets 30/50, service (5, 8]
  const Instance inst = generate_random_instance(params, 1);
  ASSERT_EQ(inst.n_targets(), 20);
  ASSERT_EQ(inst.n_depots(), 2);
  ASSERT_EQ(inst.n_vehicles(), 2);
  EXPECT_DOUBLE_EQ(inst.depots()[0].x, 0.0);
  EXPECT_DOUBLE_EQ(inst.depots()[0].y, 0.0);
  EXPECT_DOUBLE_EQ(inst.depots()[1].x, 15.0);
  EXPECT_DOUBLE_EQ(inst.depots()[1].y, 0.0);
  EXPECT_DOUBLE_EQ(inst.vehicles()[0].budget, 30.0);
  EXPECT_DOUBLE_EQ(inst.vehicles()[1].budget, 50.0);
  for (const auto& t : inst.targets()) {
    EXPECT_GE(t.x, 0.0);
    EXPECT_LE(t.x, 15.0);
    EXPECT_GE(t.y, 0.0);
    EXPECT_LE(t.y, 15.0);
    EXPECT_GT(t.service_time, 5.0);
    EXPECT_LE(t.service_time, 8.0);
  }
}

TEST(Generator, FourDepotConfiguration) {
  GeneratorParams params;
  params.n = 50;
  params.corners = {Corner::LowerLeft, Corner::LowerRight, Corner::UpperRight, Corner::UpperLeft};
  params.fleets = {{8, 50}, {4, 30}, {2, 40}, {1, 20}};
  const Instance inst = generate_random_instance(params, 4);
  ASSERT_EQ(inst.n_vehicles(), 15);
  std::vector<int> per_depot(4, 0);
  for (const auto& v : inst.vehicles()) {
    ++per_depot[v.home_depot];
    EXPECT_DOUBLE_EQ(v.budget, std::vector<double>({50, 30, 40, 20})[v.home_depot]);
  }
  EXPECT_EQ(per_depot, (std::vector<int>{8, 4, 2, 1}));
  EXPECT_DOUBLE_EQ(inst.depots()[2].x, 15.0);
  EXPECT_DOUBLE_EQ(inst.depots()[2].y, 15.0);
  EXPECT_DOUBLE_EQ(inst.depots()[3].x, 0.0);
  EXPECT_DOUBLE_EQ(inst.depots()[3].y, 15.0);
}

TEST(Generator, DeterministicPerSeed) {
  GeneratorParams params;
  const Instance a = generate_random_instance(params, 7);
  const Instance b = generate_random_instance(params, 7);
  const Instance c = generate_random_instance(params, 8);
  bool differs = false;
  for (int i = 0; i < a.n_targets(); ++i) {
    EXPECT_EQ(a.targets()[i].x, b.targets()[i].x);
    EXPECT_EQ(a.targets()[i].y, b.targets()[i].y);
    EXPECT_EQ(a.targets()[i].service_time, b.targets()[i].service_time);
    differs = differs || a.targets()[i].x != c.targets()[i].x;
  }
  EXPECT_TRUE(differs);
}

TEST(Generator, RejectsBadParameters) {
  GeneratorParams params;
  params.n = 0;
  EXPECT_THROW(generate_random_instance(params, 1), InputError);
  params = {};
  params.corners.clear();
  params.fleets.clear();
  EXPECT_THROW(generate_random_instance(params, 1), InputError);
  params = {};
  params.service_lo = 8;
  params.service_hi = 8;
  EXPECT_THROW(generate_random_instance(params, 1), InputError);
  params = {};
  params.fleets.pop_back();
  EXPECT_THROW(generate_random_instance(params, 1), InputError);
  params = {};
  params.corners = {Corner::LowerLeft, Corner::LowerLeft};
  EXPECT_THROW(generate_random_instance(params, 1), InputError);
}

TEST(Preprocess, NothingRemovedWhenAllReachable) {
  const Instance inst({{1, 7, 7, 1}, {2, 8, 8, 1}}, {{1, 0, 0}, {2, 15, 15}},
                      {{1, 0, 100}, {2, 1, 100}}, 1.0);
  const auto result = preprocess_unreachable(inst);
  EXPECT_TRUE(result.removed.empty());
  EXPECT_EQ(result.instance.n_targets(), 2);
}

TEST(Preprocess, RemovesTargetBeyondEveryBudget) {
  // Target 3 needs 2 * 20 + 1 = 41 minutes; the best budget is 40.
  const Instance inst = fixtures::line_instance({1, 20, 2}, {1, 1, 1}, {40, 30});
  const auto result = preprocess_unreachable(inst);
  EXPECT_EQ(result.removed, std::vector<int>{2});
  ASSERT_EQ(result.instance.n_targets(), 2);
  EXPECT_EQ(result.instance.targets()[1].id, 3);
}

TEST(Preprocess, SlowerVehiclesLoseTargets) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams fast;
    fast.n = 40;
    GeneratorParams slow = fast;
    slow.speed = 0.5;
    const auto a = preprocess_unreachable(generate_random_instance(fast, seed));
    const auto b = preprocess_unreachable(generate_random_instance(slow, seed));
    EXPECT_GE(b.removed.size(), a.removed.size());
    for (int id : a.removed) {
      EXPECT_NE(std::find(b.removed.begin(), b.removed.end(), id), b.removed.end());
    }
    // Brute-force reachability on the slow instance.
    const Instance raw = generate_random_instance(slow, seed);
    std::vector<int> expected;
    for (int i = 0; i < raw.n_targets(); ++i) {
      bool ok = false;
      for (int u = 0; u < raw.n_vehicles(); ++u) {
        ok = ok || oracle::fits(raw, {i}, u);
      }
      if (!ok) {
        expected.push_back(raw.targets()[i].id);
      }
    }
    EXPECT_EQ(b.removed, expected);
  }
}

TEST(Preprocess, TerritoryCountsAsUnreachable) {
  Instance inst({{1, 1, 0, 1}}, {{1, 0, 0}, {2, 10, 0}}, {{1, 0, 100}, {2, 1, 3}}, 1.0);
  inst.set_territory({1});
  const auto result = preprocess_unreachable(inst);
  EXPECT_EQ(result.removed, std::vector<int>{1});
}

} // namespace
