#include "mdmt/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "mdmt/error.hpp"

namespace mdmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolveOutcome heuristic_outcome(const Instance& instance,
                               std::vector<std::pair<Sequence, int>> trips,
                               Clock::time_point start) {
  SolveOutcome outcome;
  outcome.objective = Objective::CompletionTime;
  outcome.solution = make_solution(instance, std::move(trips));
  outcome.status = SolveStatus::Feasible;
  outcome.wall_time = seconds_since(start);
  return outcome;
}

double singleton_trip(const Instance& instance, int target, int vehicle) {
  const int home = instance.home_node(vehicle);
  return instance.travel(home, target) + instance.service(target) +
         instance.travel(target, home);
}

bool singleton_fits(const Instance& instance, int target, int vehicle) {
  return instance.allows(target, vehicle) &&
         singleton_trip(instance, target, vehicle) <= instance.budget(vehicle) + kTimeEps;
}

} // namespace

SolveOutcome solve_matheuristic(const Instance& instance,
                                const MatheuristicParams& params,
                                Objective objective) {
  const auto start = Clock::now();
  if (params.children < 1) {
    throw InputError("N_c must be >= 1");
  }
  const SequencePool pool =
    generate_heuristic_pool(instance, params.children, params.max_sequences);
  ExactOptions options;
  options.time_limit = std::max(0.0, params.time_limit - seconds_since(start));
  options.node_limit = params.node_limit;
  SolveOutcome outcome = solve_exact(pool, instance, objective, options);
  if (outcome.status == SolveStatus::PoolInsufficient) {
    // Every singleton is generated, so this only happens on instances that
    // skipped preprocessing.
    throw InputError("matheuristic needs a preprocessed instance");
  }
  outcome.wall_time = seconds_since(start);
  return outcome;
}

SolveOutcome solve_h_tsp(const Instance& instance) {
  const auto start = Clock::now();
  const int n = instance.n_targets();
  const int m = instance.n_vehicles();
  std::vector<char> served(n, 0);
  int remaining = n;
  std::vector<double> loads(m, 0.0);
  std::vector<std::pair<Sequence, int>> trips;

  while (remaining > 0) {
    std::vector<int> open;
    for (int i = 0; i < n; ++i) {
      if (!served[i]) {
        open.push_back(i);
      }
    }
    const int r = static_cast<int>(open.size());

    // Prim over the remaining targets; the virtual root and the vehicles
    // joined to it by zero-weight edges are already in the tree, so every
    // target ends up below exactly one vehicle.
    std::vector<double> key(r, kInf);
    std::vector<int> parent_target(r, -1); // index into `open`, -1 if a vehicle
    std::vector<int> owner(r, -1); // vehicle whose subtree holds the target
    std::vector<char> in_tree(r, 0);
    for (int a = 0; a < r; ++a) {
      for (int u = 0; u < m; ++u) {
        if (!instance.allows(open[a], u)) {
          continue;
        }
        const double t = instance.travel(instance.home_node(u), open[a]);
        if (t < key[a]) {
          key[a] = t;
          owner[a] = u;
        }
      }
    }
    std::vector<std::vector<int>> children_of_target(r);
    std::vector<std::vector<int>> children_of_vehicle(m);
    for (int step = 0; step < r; ++step) {
      int pick = -1;
      for (int a = 0; a < r; ++a) {
        if (!in_tree[a] && key[a] < kInf && (pick < 0 || key[a] < key[pick])) {
          pick = a;
        }
      }
      if (pick < 0) {
        break; // the rest is unreachable from any allowed vehicle
      }
      in_tree[pick] = 1;
      if (parent_target[pick] >= 0) {
        owner[pick] = owner[parent_target[pick]];
        children_of_target[parent_target[pick]].push_back(pick);
      } else {
        children_of_vehicle[owner[pick]].push_back(pick);
      }
      for (int a = 0; a < r; ++a) {
        if (in_tree[a]) {
          continue;
        }
        const double t = instance.travel(open[pick], open[a]);
        if (t < key[a]) {
          key[a] = t;
          parent_target[a] = pick;
        }
      }
    }

    bool progress = false;
    for (int u = 0; u < m; ++u) {
      if (children_of_vehicle[u].empty()) {
        continue;
      }
      // Double-tree shortcut: preorder walk of the subtree.
      std::vector<int> tour;
      std::function<void(int)> walk = [&](int a) {
        tour.push_back(open[a]);
        for (int c : children_of_target[a]) {
          walk(c);
        }
      };
      for (int c : children_of_vehicle[u]) {
        walk(c);
      }

      const int home = instance.home_node(u);
      const double budget = instance.budget(u);
      std::vector<int> picked;
      double open_duration = 0.0; // depot to the last picked target, services included
      for (int target : tour) {
        if (served[target]) {
          continue;
        }
        if (picked.empty()) {
          if (singleton_fits(instance, target, u)) {
            picked.push_back(target);
            open_duration = instance.travel(home, target) + instance.service(target);
          }
          continue;
        }
        const double extended =
          open_duration + instance.travel(picked.back(), target) + instance.service(target);
        if (!instance.allows(target, u) ||
            extended + instance.travel(target, home) > budget + kTimeEps) {
          break;
        }
        picked.push_back(target);
        open_duration = extended;
      }
      if (picked.empty()) {
        continue;
      }
      for (int target : picked) {
        served[target] = 1;
      }
      remaining -= static_cast<int>(picked.size());
      Sequence seq(instance, std::move(picked));
      loads[u] += trip_duration(instance, seq, u);
      trips.emplace_back(std::move(seq), u);
      progress = true;
    }

    if (!progress) {
      // Stall breaker: the lowest remaining target goes alone to the vehicle
      // that finishes it earliest.
      const int target = open.front();
      int best = -1;
      for (int u = 0; u < m; ++u) {
        if (singleton_fits(instance, target, u) &&
            (best < 0 || loads[u] + singleton_trip(instance, target, u) <
                           loads[best] + singleton_trip(instance, target, best))) {
          best = u;
        }
      }
      if (best < 0) {
        throw InputError("target " + std::to_string(instance.targets()[target].id) +
                         " is unreachable; preprocess the instance first");
      }
      Sequence seq(instance, {target});
      loads[best] += trip_duration(instance, seq, best);
      trips.emplace_back(std::move(seq), best);
      served[target] = 1;
      --remaining;
    }
  }
  return heuristic_outcome(instance, std::move(trips), start);
}

SolveOutcome solve_h_greedy(const Instance& instance) {
  const auto start = Clock::now();
  const int n = instance.n_targets();
  const int m = instance.n_vehicles();

  struct State {
    double load = 0.0; // closed trips
    std::vector<int> cycle;
    double open_duration = 0.0; // depot to the current position, services included
    bool retired = false;
  };
  std::vector<State> fleet(m);
  std::vector<char> served(n, 0);
  int remaining = n;
  std::vector<std::pair<Sequence, int>> trips;

  auto close_cycle = [&](int u) {
    State& s = fleet[u];
    if (s.cycle.empty()) {
      return;
    }
    Sequence seq(instance, std::move(s.cycle));
    s.load += trip_duration(instance, seq, u);
    trips.emplace_back(std::move(seq), u);
    s.cycle.clear();
    s.open_duration = 0.0;
  };

  while (remaining > 0) {
    int actor = -1;
    for (int u = 0; u < m; ++u) {
      if (fleet[u].retired) {
        continue;
      }
      const double cumulative = fleet[u].load + fleet[u].open_duration;
      if (actor < 0 || cumulative < fleet[actor].load + fleet[actor].open_duration) {
        actor = u;
      }
    }
    if (actor < 0) {
      throw InputError("some targets fit no vehicle; preprocess the instance first");
    }

    State& s = fleet[actor];
    const int home = instance.home_node(actor);
    const int position = s.cycle.empty() ? home : s.cycle.back();
    const double budget = instance.budget(actor);
    int next = -1;
    double next_dist = kInf;
    for (int j = 0; j < n; ++j) {
      if (served[j] || !instance.allows(j, actor)) {
        continue;
      }
      const double d = instance.travel(position, j);
      if (d >= next_dist) {
        continue;
      }
      const double closed = s.open_duration + d + instance.service(j) + instance.travel(j, home);
      if (closed <= budget + kTimeEps) {
        next = j;
        next_dist = d;
      }
    }

    if (next >= 0) {
      s.open_duration += next_dist + instance.service(next);
      s.cycle.push_back(next);
      served[next] = 1;
      --remaining;
    } else if (!s.cycle.empty()) {
      close_cycle(actor);
    } else {
      s.retired = true;
    }
  }
  for (int u = 0; u < m; ++u) {
    close_cycle(u);
  }
  return heuristic_outcome(instance, std::move(trips), start);
}

} // namespace mdmt
