#pragma once

#include <cstddef>
#include <limits>

#include "mdmt/exact.hpp"
#include "mdmt/instance.hpp"
#include "mdmt/pool.hpp"

namespace mdmt {

struct MatheuristicParams {
  int children = 3; // N_c
  std::size_t max_sequences = 200'000; // K_max; kUnlimited for no cap
  double time_limit = std::numeric_limits<double>::infinity(); // inner solve, seconds
  std::size_t node_limit = kUnlimited; // inner solve
};

// Heuristic pool generation followed by the exact model restricted to it.
SolveOutcome solve_matheuristic(const Instance& instance,
                                const MatheuristicParams& params,
                                Objective objective = Objective::CompletionTime);

// Minimum-spanning-tree partition: vehicles hang below a virtual root, each
// vehicle subtree is shortcut into a tour and cut to a budget-feasible trip;
// served targets are removed and the procedure repeats.
SolveOutcome solve_h_tsp(const Instance& instance);

// Parallel nearest-neighbour cycle building: the least-loaded vehicle
// extends its open cycle with the closest target that still lets it return
// home within budget, otherwise closes the cycle.
SolveOutcome solve_h_greedy(const Instance& instance);

} // namespace mdmt
