#pragma once

#include <string>
#include <vector>

#include "mdmt/instance.hpp"
#include "mdmt/sequence.hpp"

namespace mdmt {

struct Trip {
  Sequence sequence;
  int vehicle = 0; // vehicle index
  double duration = 0.0; // t_ku
};

// Selected sequences with their vehicles. loads[u] is the completion time of
// vehicle u; tau is the largest load.
struct Solution {
  std::vector<Trip> trips;
  std::vector<double> loads;
  double tau = 0.0;
  double objective_value = 0.0;
};

// Builds a solution from (sequence, vehicle) pairs, filling trip durations,
// loads and tau. objective_value is set to tau.
Solution make_solution(const Instance& instance,
                       std::vector<std::pair<Sequence, int>> assignments);

// Pure travel of all trips: trip durations minus service times.
double total_travel_distance(const Solution& solution, const Instance& instance);

enum class ViolationKind {
  UncoveredTarget,
  MultiplyCoveredTarget,
  BudgetExceeded,
  IncompatibleAssignment,
  LoadMismatch,
  TauMismatch,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<Violation> violations;

  bool has(ViolationKind kind) const;
};

// Recomputes everything from the instance and reports each broken
// constraint. Throws InputError only for out-of-range indices.
ValidationReport validate_solution(const Instance& instance, const Solution& solution);

} // namespace mdmt
