#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mdmt {

// Absolute tolerance for every comparison between durations (minutes).
inline constexpr double kTimeEps = 1e-9;

struct TargetNode {
  int id = 0;
  double x = 0.0; // km
  double y = 0.0; // km
  double service_time = 0.0; // minutes
};

struct Depot {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct Vehicle {
  int id = 0;
  int home_depot = 0; // index into Instance::depots()
  double budget = 0.0; // minutes of flight per battery
};

// A problem instance. Node indices are dense: targets occupy [0, n) and
// depots occupy [n, n + |D|). The travel-time matrix is built once in the
// constructor and never mutated afterwards.
class Instance {
public:
  Instance() = default;

  // Euclidean geometry; travel time = distance / speed.
  Instance(std::vector<TargetNode> targets,
           std::vector<Depot> depots,
           std::vector<Vehicle> vehicles,
           double speed_km_per_min);

  // Explicit travel times over the node order targets-then-depots. The
  // coordinates are kept for rendering only.
  Instance(std::vector<TargetNode> targets,
           std::vector<Depot> depots,
           std::vector<Vehicle> vehicles,
           double speed_km_per_min,
           std::vector<std::vector<double>> travel_matrix);

  const std::vector<TargetNode>& targets() const { return targets_; }
  const std::vector<Depot>& depots() const { return depots_; }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  double speed() const { return speed_; }

  int n_targets() const { return static_cast<int>(targets_.size()); }
  int n_depots() const { return static_cast<int>(depots_.size()); }
  int n_vehicles() const { return static_cast<int>(vehicles_.size()); }
  int n_nodes() const { return n_targets() + n_depots(); }

  int depot_node(int depot_index) const { return n_targets() + depot_index; }
  int home_node(int vehicle_index) const {
    return depot_node(vehicles_[vehicle_index].home_depot);
  }

  // Unchecked lookup by node index.
  double travel(int a, int b) const {
    return matrix_[static_cast<std::size_t>(a) * n_nodes() + b];
  }

  double service(int target) const { return targets_[target].service_time; }
  double budget(int vehicle) const { return vehicles_[vehicle].budget; }
  double max_budget() const { return max_budget_; }

  bool has_explicit_matrix() const { return explicit_matrix_; }

  // Territory restriction: when set, target i may only be flown by vehicles
  // whose home depot equals territory()[i].
  bool restricted() const { return !territory_.empty(); }
  const std::vector<int>& territory() const { return territory_; }
  void set_territory(std::vector<int> depot_per_target);
  bool allows(int target, int vehicle) const {
    return territory_.empty() ||
           territory_[target] == vehicles_[vehicle].home_depot;
  }

  // Index lookups from external ids; nullopt when absent.
  std::optional<int> target_index(int id) const;
  std::optional<int> vehicle_index(int id) const;
  std::optional<int> depot_index(int id) const;

  // Copy of this instance keeping only the listed targets (in that order).
  Instance with_targets(std::span<const int> keep) const;

private:
  void validate(); // also caches max_budget_
  void build_euclidean_matrix();

  std::vector<TargetNode> targets_;
  std::vector<Depot> depots_;
  std::vector<Vehicle> vehicles_;
  double speed_ = 1.0;
  std::vector<double> matrix_;
  bool explicit_matrix_ = false;
  double max_budget_ = 0.0;
  std::vector<int> territory_;
};

// Checked travel time between two node indices. Throws InputError on an
// unknown index.
double travel_time(const Instance& instance, int a, int b);

// Square corners, counter-clockwise from the origin.
enum class Corner : int { LowerLeft = 0, LowerRight = 1, UpperRight = 2, UpperLeft = 3 };

struct FleetSpec {
  int count = 1;
  double budget = 30.0;
};

struct GeneratorParams {
  double side_km = 15.0;
  int n = 20;
  std::vector<Corner> corners{Corner::LowerLeft, Corner::LowerRight};
  std::vector<FleetSpec> fleets{{1, 30.0}, {1, 50.0}}; // one entry per corner
  double service_lo = 5.0; // exclusive
  double service_hi = 8.0; // inclusive
  double speed = 1.0;
};

// Uniform targets in the square, depots on the requested corners, service
// times uniform on (lo, hi]. Pure function of (params, seed).
Instance generate_random_instance(const GeneratorParams& params, std::uint64_t seed);

struct PreprocessResult {
  Instance instance;
  std::vector<int> removed; // target ids
};

// Drops every target that no vehicle can serve with a singleton trip.
PreprocessResult preprocess_unreachable(const Instance& instance);

} // namespace mdmt
