#include "mdmt/instance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "mdmt/error.hpp"

namespace mdmt {

namespace {

template <class T>
void require_unique_ids(const std::vector<T>& items, const char* what) {
  std::unordered_set<int> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.id).second) {
      throw InputError(std::string("duplicate ") + what + " id " +
                       std::to_string(item.id));
    }
  }
}

template <class T>
std::optional<int> find_id(const std::vector<T>& items, int id) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

// Platform-independent uniform double in [0, 1).
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Instance::Instance(std::vector<TargetNode> targets,
                   std::vector<Depot> depots,
                   std::vector<Vehicle> vehicles,
                   double speed_km_per_min)
  : targets_(std::move(targets)),
    depots_(std::move(depots)),
    vehicles_(std::move(vehicles)),
    speed_(speed_km_per_min) {
  validate();
  build_euclidean_matrix();
}

Instance::Instance(std::vector<TargetNode> targets,
                   std::vector<Depot> depots,
                   std::vector<Vehicle> vehicles,
                   double speed_km_per_min,
                   std::vector<std::vector<double>> travel_matrix)
  : targets_(std::move(targets)),
    depots_(std::move(depots)),
    vehicles_(std::move(vehicles)),
    speed_(speed_km_per_min),
    explicit_matrix_(true) {
  validate();
  const auto size = static_cast<std::size_t>(n_nodes());
  if (travel_matrix.size() != size) {
    throw InputError("travel matrix must have one row per node (" +
                     std::to_string(size) + ")");
  }
  matrix_.resize(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    if (travel_matrix[a].size() != size) {
      throw InputError("travel matrix row " + std::to_string(a) +
                       " has wrong length");
    }
    for (std::size_t b = 0; b < size; ++b) {
      const double t = travel_matrix[a][b];
      if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InputError("travel matrix entries must be finite and >= 0");
      }
      matrix_[a * size + b] = (a == b) ? 0.0 : t;
    }
  }
}

void Instance::validate() {
  if (!(speed_ > 0.0) || !std::isfinite(speed_)) {
    throw InputError("speed must be > 0");
  }
  if (depots_.empty()) {
    throw InputError("instance needs at least one depot");
  }
  if (vehicles_.empty()) {
    throw InputError("instance needs at least one vehicle");
  }
  require_unique_ids(targets_, "target");
  require_unique_ids(depots_, "depot");
  require_unique_ids(vehicles_, "vehicle");
  for (const auto& t : targets_) {
    if (!(t.service_time > 0.0) || !std::isfinite(t.service_time)) {
      throw InputError("target " + std::to_string(t.id) +
                       ": service time must be > 0");
    }
  }
  for (const auto& v : vehicles_) {
    if (!(v.budget > 0.0) || !std::isfinite(v.budget)) {
      throw InputError("vehicle " + std::to_string(v.id) +
                       ": budget must be > 0");
    }
    if (v.home_depot < 0 || v.home_depot >= n_depots()) {
      throw InputError("vehicle " + std::to_string(v.id) +
                       ": unknown home depot");
    }
    max_budget_ = std::max(max_budget_, v.budget);
  }
}

void Instance::build_euclidean_matrix() {
  const int size = n_nodes();
  std::vector<std::pair<double, double>> xy;
  xy.reserve(size);
  for (const auto& t : targets_) {
    xy.emplace_back(t.x, t.y);
  }
  for (const auto& d : depots_) {
    xy.emplace_back(d.x, d.y);
  }
  matrix_.assign(static_cast<std::size_t>(size) * size, 0.0);
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) {
      const double dist =
        std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
      matrix_[static_cast<std::size_t>(a) * size + b] = dist / speed_;
      matrix_[static_cast<std::size_t>(b) * size + a] = dist / speed_;
    }
  }
}

void Instance::set_territory(std::vector<int> depot_per_target) {
  if (!depot_per_target.empty()) {
    if (static_cast<int>(depot_per_target.size()) != n_targets()) {
      throw InputError("territory needs one depot per target");
    }
    for (int d : depot_per_target) {
      if (d < 0 || d >= n_depots()) {
        throw InputError("territory references an unknown depot");
      }
    }
  }
  territory_ = std::move(depot_per_target);
}

std::optional<int> Instance::target_index(int id) const {
  return find_id(targets_, id);
}

std::optional<int> Instance::vehicle_index(int id) const {
  return find_id(vehicles_, id);
}

std::optional<int> Instance::depot_index(int id) const {
  return find_id(depots_, id);
}

Instance Instance::with_targets(std::span<const int> keep) const {
  Instance out = *this;
  out.targets_.clear();
  out.territory_.clear();
  std::vector<int> nodes;
  for (int i : keep) {
    if (i < 0 || i >= n_targets()) {
      throw InputError("with_targets: index out of range");
    }
    out.targets_.push_back(targets_[i]);
    if (restricted()) {
      out.territory_.push_back(territory_[i]);
    }
    nodes.push_back(i);
  }
  for (int d = 0; d < n_depots(); ++d) {
    nodes.push_back(depot_node(d));
  }
  const std::size_t size = nodes.size();
  out.matrix_.assign(size * size, 0.0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      out.matrix_[a * size + b] = travel(nodes[a], nodes[b]);
    }
  }
  return out;
}

double travel_time(const Instance& instance, int a, int b) {
  const int n = instance.n_nodes();
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw InputError("travel_time: unknown node index");
  }
  return instance.travel(a, b);
}

Instance generate_random_instance(const GeneratorParams& params,
                                  std::uint64_t seed) {
  if (params.n < 1) {
    throw InputError("generator: n must be >= 1");
  }
  if (params.corners.empty()) {
    throw InputError("generator: depot corner subset is empty");
  }
  if (params.fleets.size() != params.corners.size()) {
    throw InputError("generator: need one fleet entry per depot");
  }
  if (!(params.service_lo < params.service_hi) || params.service_lo < 0.0) {
    throw InputError("generator: service interval needs 0 <= lo < hi");
  }
  if (!(params.side_km > 0.0)) {
    throw InputError("generator: side must be > 0");
  }
  {
    std::vector<Corner> sorted = params.corners;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("generator: corners must be distinct");
    }
  }

  std::mt19937_64 rng(seed);
  const double side = params.side_km;

  std::vector<TargetNode> targets;
  targets.reserve(params.n);
  for (int i = 0; i < params.n; ++i) {
    TargetNode t;
    t.id = i;
    t.x = side * unit_uniform(rng);
    t.y = side * unit_uniform(rng);
    t.service_time = params.service_hi -
                     unit_uniform(rng) * (params.service_hi - params.service_lo);
    targets.push_back(t);
  }

  std::vector<Depot> depots;
  std::vector<Vehicle> vehicles;
  for (std::size_t d = 0; d < params.corners.size(); ++d) {
    Depot depot;
    depot.id = static_cast<int>(d);
    switch (params.corners[d]) {
      case Corner::LowerLeft: depot.x = 0.0; depot.y = 0.0; break;
      case Corner::LowerRight: depot.x = side; depot.y = 0.0; break;
      case Corner::UpperRight: depot.x = side; depot.y = side; break;
      case Corner::UpperLeft: depot.x = 0.0; depot.y = side; break;
    }
    depots.push_back(depot);
    const FleetSpec& fleet = params.fleets[d];
    if (fleet.count < 1) {
      throw InputError("generator: every depot needs at least one vehicle");
    }
    for (int c = 0; c < fleet.count; ++c) {
      Vehicle v;
      v.id = static_cast<int>(vehicles.size());
      v.home_depot = static_cast<int>(d);
      v.budget = fleet.budget;
      vehicles.push_back(v);
    }
  }
  return Instance(std::move(targets), std::move(depots), std::move(vehicles),
                  params.speed);
}

PreprocessResult preprocess_unreachable(const Instance& instance) {
  std::vector<int> keep;
  std::vector<int> removed;
  for (int i = 0; i < instance.n_targets(); ++i) {
    bool reachable = false;
    for (int u = 0; u < instance.n_vehicles() && !reachable; ++u) {
      const int home = instance.home_node(u);
      const double trip = instance.travel(home, i) + instance.service(i) +
                          instance.travel(i, home);
      reachable = instance.allows(i, u) && trip <= instance.budget(u) + kTimeEps;
    }
    if (reachable) {
      keep.push_back(i);
    } else {
      removed.push_back(instance.targets()[i].id);
    }
  }
  if (removed.empty()) {
    return {instance, {}};
  }
  return {instance.with_targets(keep), std::move(removed)};
}

} // namespace mdmt
