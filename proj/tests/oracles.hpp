#pragma once

// Brute-force reference implementations. They work from coordinates and ids
// only and share no code with the library's search or enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "mdmt/instance.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dist_targets(const mdmt::Instance& inst, int a, int b) {
  const auto& p = inst.targets()[a];
  const auto& q = inst.targets()[b];
  return std::hypot(p.x - q.x, p.y - q.y) / inst.speed();
}

inline double dist_home(const mdmt::Instance& inst, int vehicle, int target) {
  const auto& d = inst.depots()[inst.vehicles()[vehicle].home_depot];
  const auto& t = inst.targets()[target];
  return std::hypot(d.x - t.x, d.y - t.y) / inst.speed();
}

inline double path_duration(const mdmt::Instance& inst, const std::vector<int>& order) {
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    total += inst.targets()[order[k]].service_time;
    if (k > 0) {
      total += dist_targets(inst, order[k - 1], order[k]);
    }
  }
  return total;
}

inline double trip(const mdmt::Instance& inst, const std::vector<int>& order, int vehicle) {
  return dist_home(inst, vehicle, order.front()) + path_duration(inst, order) +
         dist_home(inst, vehicle, order.back());
}

inline double service_sum(const mdmt::Instance& inst, const std::vector<int>& order) {
  double s = 0.0;
  for (int i : order) {
    s += inst.targets()[i].service_time;
  }
  return s;
}

inline bool fits(const mdmt::Instance& inst, const std::vector<int>& order, int vehicle) {
  for (int i : order) {
    if (!inst.allows(i, vehicle)) {
      return false;
    }
  }
  return trip(inst, order, vehicle) <= inst.vehicles()[vehicle].budget + 1e-9;
}

// (sorted node set, min extreme, max extreme)
using ClassKey = std::tuple<std::vector<int>, int, int>;

// Every ordered subset of the targets that at least one vehicle can fly,
// reduced to the shortest duration per class.
inline std::map<ClassKey, double> feasible_classes(const mdmt::Instance& inst) {
  const int n = inst.n_targets();
  std::map<ClassKey, double> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        order.push_back(i);
      }
    }
    do {
      bool any = false;
      for (int u = 0; u < inst.n_vehicles() && !any; ++u) {
        any = fits(inst, order, u);
      }
      if (!any) {
        continue;
      }
      std::vector<int> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      ClassKey key{sorted, std::min(order.front(), order.back()),
                   std::max(order.front(), order.back())};
      const double d = path_duration(inst, order);
      auto it = best.find(key);
      if (it == best.end() || d < it->second) {
        best[key] = d;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return best;
}

// cost[mask][u]: cheapest single trip of vehicle u serving exactly `mask`,
// measured either as the full trip duration or as pure travel. kInf when
// infeasible.
inline std::vector<std::vector<double>> block_costs(const mdmt::Instance& inst, bool travel_only) {
  const int n = inst.n_targets();
  const int m = inst.n_vehicles();
  std::vector<std::vector<double>> cost(1u << n, std::vector<double>(m, kInf));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        order.push_back(i);
      }
    }
    const double service = service_sum(inst, order);
    do {
      for (int u = 0; u < m; ++u) {
        if (!fits(inst, order, u)) {
          continue;
        }
        const double t = trip(inst, order, u) - (travel_only ? service : 0.0);
        cost[mask][u] = std::min(cost[mask][u], t);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return cost;
}

// Minimum over every partition of the targets into trips and every
// assignment of the trips to vehicles. With `travel_only` the objective is
// the total travel, otherwise the largest vehicle completion time.
inline double optimum(const mdmt::Instance& inst, bool travel_only) {
  const int n = inst.n_targets();
  const int m = inst.n_vehicles();
  const auto cost = block_costs(inst, travel_only);
  const std::uint32_t full = (1u << n) - 1;

  // per_vehicle[u][mask]: vehicle u alone serving `mask` over several trips.
  std::vector<std::vector<double>> per_vehicle(m, std::vector<double>(1u << n, kInf));
  for (int u = 0; u < m; ++u) {
    auto& f = per_vehicle[u];
    f[0] = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const std::uint32_t low = mask & (~mask + 1);
      for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low) || cost[sub][u] == kInf || f[mask ^ sub] == kInf) {
          continue;
        }
        f[mask] = std::min(f[mask], cost[sub][u] + f[mask ^ sub]);
      }
    }
  }

  // Split the targets among vehicles.
  std::vector<double> g = per_vehicle[0];
  for (int u = 1; u < m; ++u) {
    std::vector<double> next(1u << n, kInf);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
        const double a = per_vehicle[u][sub];
        const double b = g[mask ^ sub];
        if (a < kInf && b < kInf) {
          next[mask] = std::min(next[mask], travel_only ? a + b : std::max(a, b));
        }
        if (sub == 0) {
          break;
        }
      }
    }
    g = std::move(next);
  }
  return g[full];
}

// Minimum makespan over all |U|^k assignments of fixed trip sequences.
inline double min_makespan(const mdmt::Instance& inst, const std::vector<std::vector<int>>& seqs) {
  const int m = inst.n_vehicles();
  const int k = static_cast<int>(seqs.size());
  double best = kInf;
  std::vector<int> choice(k, 0);
  while (true) {
    std::vector<double> loads(m, 0.0);
    bool ok = true;
    for (int s = 0; s < k && ok; ++s) {
      ok = fits(inst, seqs[s], choice[s]);
      if (ok) {
        loads[choice[s]] += trip(inst, seqs[s], choice[s]);
      }
    }
    if (ok) {
      best = std::min(best, *std::max_element(loads.begin(), loads.end()));
    }
    int pos = 0;
    while (pos < k && ++choice[pos] == m) {
      choice[pos++] = 0;
    }
    if (pos == k) {
      break;
    }
  }
  return best;
}

} // namespace oracle
