#include "mdmt/solution.hpp"

#include <algorithm>
#include <cmath>

#include "mdmt/error.hpp"

namespace mdmt {

namespace {

// Durations accumulate rounding over many trips; compare relative to scale.
bool close(double a, double b) {
  return std::abs(a - b) <= 1e-6 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string target_label(const Instance& instance, int i) {
  return "target " + std::to_string(instance.targets()[i].id);
}

std::string vehicle_label(const Instance& instance, int u) {
  return "vehicle " + std::to_string(instance.vehicles()[u].id);
}

} // namespace

Solution make_solution(const Instance& instance,
                       std::vector<std::pair<Sequence, int>> assignments) {
  Solution out;
  out.loads.assign(instance.n_vehicles(), 0.0);
  for (auto& [seq, u] : assignments) {
    Trip trip;
    trip.duration = trip_duration(instance, seq, u);
    trip.vehicle = u;
    trip.sequence = std::move(seq);
    out.loads[u] += trip.duration;
    out.trips.push_back(std::move(trip));
  }
  out.tau = out.loads.empty() ? 0.0 : *std::max_element(out.loads.begin(), out.loads.end());
  out.objective_value = out.tau;
  return out;
}

double total_travel_distance(const Solution& solution, const Instance& instance) {
  double total = 0.0;
  for (const Trip& trip : solution.trips) {
    const int home = instance.home_node(trip.vehicle);
    const auto& nodes = trip.sequence.nodes();
    total += instance.travel(home, nodes.front());
    for (std::size_t p = 1; p < nodes.size(); ++p) {
      total += instance.travel(nodes[p - 1], nodes[p]);
    }
    total += instance.travel(nodes.back(), home);
  }
  return total;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UncoveredTarget: return "UNCOVERED_TARGET";
    case ViolationKind::MultiplyCoveredTarget: return "MULTIPLY_COVERED_TARGET";
    case ViolationKind::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ViolationKind::IncompatibleAssignment: return "INCOMPATIBLE_ASSIGNMENT";
    case ViolationKind::LoadMismatch: return "LOAD_MISMATCH";
    case ViolationKind::TauMismatch: return "TAU_MISMATCH";
  }
  return "UNKNOWN";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_solution(const Instance& instance, const Solution& solution) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  const int n = instance.n_targets();
  const int m = instance.n_vehicles();
  std::vector<int> cover(n, 0);
  std::vector<double> loads(m, 0.0);

  for (std::size_t t = 0; t < solution.trips.size(); ++t) {
    const Trip& trip = solution.trips[t];
    if (trip.vehicle < 0 || trip.vehicle >= m) {
      throw InputError("trip " + std::to_string(t) + " references an unknown vehicle");
    }
    if (trip.sequence.size() == 0) {
      throw InputError("trip " + std::to_string(t) + " has an empty sequence");
    }
    for (int i : trip.sequence.nodes()) {
      if (i < 0 || i >= n) {
        throw InputError("trip " + std::to_string(t) + " references an unknown target");
      }
      ++cover[i];
      if (!instance.allows(i, trip.vehicle)) {
        add(ViolationKind::IncompatibleAssignment,
            target_label(instance, i) + " lies outside the territory of " +
              vehicle_label(instance, trip.vehicle));
      }
    }
    // Recompute from scratch; a trip visiting a target twice is reported
    // through coverage instead of failing here.
    const auto& nodes = trip.sequence.nodes();
    const int home = instance.home_node(trip.vehicle);
    double duration = instance.travel(home, nodes.front()) + instance.travel(nodes.back(), home);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      duration += instance.service(nodes[p]);
      if (p > 0) {
        duration += instance.travel(nodes[p - 1], nodes[p]);
      }
    }
    if (duration > instance.budget(trip.vehicle) + kTimeEps) {
      add(ViolationKind::BudgetExceeded,
          "trip " + std::to_string(t) + " lasts " + std::to_string(duration) +
            " min, budget of " + vehicle_label(instance, trip.vehicle) + " is " +
            std::to_string(instance.budget(trip.vehicle)));
    }
    if (!close(duration, trip.duration)) {
      add(ViolationKind::LoadMismatch,
          "trip " + std::to_string(t) + " reports " + std::to_string(trip.duration) +
            " min, recomputed " + std::to_string(duration));
    }
    loads[trip.vehicle] += duration;
  }

  for (int i = 0; i < n; ++i) {
    if (cover[i] == 0) {
      add(ViolationKind::UncoveredTarget, target_label(instance, i) + " is not visited");
    } else if (cover[i] > 1) {
      add(ViolationKind::MultiplyCoveredTarget,
          target_label(instance, i) + " is visited " + std::to_string(cover[i]) + " times");
    }
  }

  if (!solution.loads.empty() && static_cast<int>(solution.loads.size()) != m) {
    add(ViolationKind::LoadMismatch, "load vector has wrong length");
  } else {
    for (int u = 0; u < static_cast<int>(solution.loads.size()); ++u) {
      if (!close(solution.loads[u], loads[u])) {
        add(ViolationKind::LoadMismatch,
            vehicle_label(instance, u) + " reports load " + std::to_string(solution.loads[u]) +
              ", recomputed " + std::to_string(loads[u]));
      }
    }
  }

  const double tau = loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
  if (!close(tau, solution.tau)) {
    add(ViolationKind::TauMismatch,
        "tau reported " + std::to_string(solution.tau) + ", recomputed " + std::to_string(tau));
  }

  report.feasible = report.violations.empty();
  return report;
}

} // namespace mdmt
