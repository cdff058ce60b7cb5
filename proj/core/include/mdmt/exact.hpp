#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdmt/instance.hpp"
#include "mdmt/pool.hpp"
#include "mdmt/solution.hpp"

namespace mdmt {

enum class Objective { CompletionTime, TotalTravelDistance };

enum class SolveStatus {
  Optimal,
  FeasibleTimeLimit,
  Infeasible,
  PoolInsufficient,
  Feasible, // heuristic answer, no optimality claim
};

const char* to_string(Objective objective);
const char* to_string(SolveStatus status);
std::optional<Objective> parse_objective(const std::string& text);

struct SolveOutcome {
  std::optional<Solution> solution;
  SolveStatus status = SolveStatus::Infeasible;
  Objective objective = Objective::CompletionTime;
  double best_lower_bound = 0.0;
  std::size_t nodes_explored = 0;
  double wall_time = 0.0; // seconds
  std::size_t pool_size = 0;
  bool cap_hit = false;
};

struct ExactOptions {
  double time_limit = std::numeric_limits<double>::infinity(); // seconds
  std::size_t node_limit = kUnlimited;
  // Primal solution to start from (any feasible solution, not necessarily
  // made of pool sequences). When unset and `greedy_warm_start` is on, the
  // greedy heuristic provides one.
  std::optional<Solution> warm_start;
  bool greedy_warm_start = false;
  // Before the complete search: one greedy dive for a first pool solution,
  // then repeated re-optimisation of small groups of its trips (the rest
  // held fixed) by the same search. With a finite time limit this phase
  // gets at most half of it.
  bool local_search = true;
  std::size_t local_search_nodes = 20'000; // per sub-problem
  // Dominance memo over (covered targets, loads) states.
  bool memo = true;
  std::size_t memo_limit = 2'000'000;
};

// Optimal selection of pool sequences partitioning the targets, each flown
// by one compatible vehicle. Solutions are returned with objective_value
// set to tau or to the total travel, depending on `objective`.
SolveOutcome solve_exact(const SequencePool& pool,
                         const Instance& instance,
                         Objective objective,
                         double time_limit);
SolveOutcome solve_exact(const SequencePool& pool,
                         const Instance& instance,
                         Objective objective,
                         const ExactOptions& options);

// Full enumeration followed by solve_exact. When the enumeration does not
// fit (cap or time), falls back to the warm start with FeasibleTimeLimit.
SolveOutcome solve_exact_full(const Instance& instance,
                              Objective objective,
                              const ExactOptions& options,
                              std::size_t enumeration_cap);

struct Assignment {
  std::vector<int> vehicle_of; // per input sequence
  std::vector<double> loads;
  double tau = 0.0;
};

// Minimum-makespan assignment of a fixed set of sequences to compatible
// vehicles. Throws InputError if some sequence fits no vehicle.
Assignment assign_min_makespan(std::span<const Sequence> selected, const Instance& instance);

namespace detail {

// Bound used at every search node: the best objective reachable after the
// targets flagged in `covered` have been served, given the current vehicle
// loads and committed travel. Returns +inf when some uncovered target has no
// remaining covering sequence.
double node_lower_bound(const SequencePool& pool,
                        const Instance& instance,
                        Objective objective,
                        std::span<const char> covered,
                        std::span<const double> loads,
                        double committed_travel);

} // namespace detail

} // namespace mdmt
