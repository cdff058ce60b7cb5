#pragma once

#include <random>

#include "mdmt/instance.hpp"

namespace fixtures {

// Small random instance: 1-2 depots, 1-3 vehicles, budgets drawn in
// [25, 60] minutes on a 10 km square so multi-target trips are common.
inline mdmt::Instance small_instance(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed * 7919 + 17);
  mdmt::GeneratorParams params;
  params.side_km = 10.0;
  params.n = n;
  const int depots = 1 + static_cast<int>(rng() % 2);
  const int vehicles = std::max<int>(depots, 1 + static_cast<int>(rng() % 3));
  params.corners.clear();
  params.fleets.clear();
  for (int d = 0; d < depots; ++d) {
    params.corners.push_back(static_cast<mdmt::Corner>(d == 0 ? 0 : 2));
    params.fleets.push_back({d == 0 ? vehicles - (depots - 1) : 1,
                             25.0 + static_cast<double>(rng() % 36)});
  }
  return mdmt::generate_random_instance(params, seed);
}

// Targets on a line at the given x positions, one depot at the origin.
inline mdmt::Instance line_instance(const std::vector<double>& xs,
                                    const std::vector<double>& service,
                                    const std::vector<double>& budgets) {
  std::vector<mdmt::TargetNode> targets;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    targets.push_back({static_cast<int>(i) + 1, xs[i], 0.0, service[i]});
  }
  std::vector<mdmt::Vehicle> vehicles;
  for (std::size_t u = 0; u < budgets.size(); ++u) {
    vehicles.push_back({static_cast<int>(u) + 1, 0, budgets[u]});
  }
  return mdmt::Instance(targets, {{100, 0.0, 0.0}}, vehicles, 1.0);
}

} // namespace fixtures
