#include "mdmt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mdmt/error.hpp"

namespace mdmt::io {

namespace {

template <class T>
T field(const json& obj, const char* name, const char* where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw InputError(std::string(where) + ": missing field \"" + name + "\"");
  }
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string(where) + ": field \"" + name + "\" has the wrong type");
  }
}

const json& array_field(const json& obj, const char* name) {
  if (!obj.contains(name) || !obj.at(name).is_array()) {
    throw InputError(std::string("instance: \"") + name + "\" must be an array");
  }
  return obj.at(name);
}

} // namespace

json instance_to_json(const Instance& instance) {
  json doc;
  doc["speed_km_per_min"] = instance.speed();
  json depots = json::array();
  for (const auto& d : instance.depots()) {
    depots.push_back({{"id", d.id}, {"x", d.x}, {"y", d.y}});
  }
  json targets = json::array();
  for (int i = 0; i < instance.n_targets(); ++i) {
    const auto& t = instance.targets()[i];
    json item = {{"id", t.id}, {"x", t.x}, {"y", t.y}, {"service_min", t.service_time}};
    if (instance.restricted()) {
      item["territory_depot"] = instance.depots()[instance.territory()[i]].id;
    }
    targets.push_back(std::move(item));
  }
  json vehicles = json::array();
  for (const auto& v : instance.vehicles()) {
    vehicles.push_back({{"id", v.id},
                        {"depot", instance.depots()[v.home_depot].id},
                        {"budget_min", v.budget}});
  }
  doc["depots"] = std::move(depots);
  doc["targets"] = std::move(targets);
  doc["vehicles"] = std::move(vehicles);
  if (instance.has_explicit_matrix()) {
    json rows = json::array();
    for (int a = 0; a < instance.n_nodes(); ++a) {
      json row = json::array();
      for (int b = 0; b < instance.n_nodes(); ++b) {
        row.push_back(instance.travel(a, b));
      }
      rows.push_back(std::move(row));
    }
    doc["travel_matrix_min"] = std::move(rows);
  }
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw InputError("instance: document must be an object");
  }
  const double speed = doc.contains("speed_km_per_min")
                         ? field<double>(doc, "speed_km_per_min", "instance")
                         : 1.0;
  std::vector<Depot> depots;
  for (const auto& item : array_field(doc, "depots")) {
    depots.push_back({field<int>(item, "id", "depot"), field<double>(item, "x", "depot"),
                      field<double>(item, "y", "depot")});
  }
  std::vector<TargetNode> targets;
  std::vector<int> territory_ids;
  bool any_territory = false;
  for (const auto& item : array_field(doc, "targets")) {
    targets.push_back({field<int>(item, "id", "target"), field<double>(item, "x", "target"),
                       field<double>(item, "y", "target"),
                       field<double>(item, "service_min", "target")});
    if (item.contains("territory_depot")) {
      any_territory = true;
      territory_ids.push_back(field<int>(item, "territory_depot", "target"));
    } else {
      territory_ids.push_back(-1);
    }
  }
  std::vector<Vehicle> vehicles;
  for (const auto& item : array_field(doc, "vehicles")) {
    const int depot_id = field<int>(item, "depot", "vehicle");
    int home = -1;
    for (std::size_t d = 0; d < depots.size(); ++d) {
      if (depots[d].id == depot_id) {
        home = static_cast<int>(d);
      }
    }
    if (home < 0) {
      throw InputError("vehicle references unknown depot " + std::to_string(depot_id));
    }
    vehicles.push_back({field<int>(item, "id", "vehicle"), home,
                        field<double>(item, "budget_min", "vehicle")});
  }

  Instance instance;
  if (doc.contains("travel_matrix_min")) {
    auto matrix = field<std::vector<std::vector<double>>>(doc, "travel_matrix_min", "instance");
    instance = Instance(std::move(targets), std::move(depots), std::move(vehicles), speed,
                        std::move(matrix));
  } else {
    instance = Instance(std::move(targets), std::move(depots), std::move(vehicles), speed);
  }
  if (any_territory) {
    std::vector<int> territory;
    for (int id : territory_ids) {
      const auto d = instance.depot_index(id);
      if (!d) {
        throw InputError("every target needs a known territory_depot when any target has one");
      }
      territory.push_back(*d);
    }
    instance.set_territory(std::move(territory));
  }
  return instance;
}

json solution_to_json(const Solution& solution, const Instance& instance) {
  json trips = json::array();
  for (const Trip& trip : solution.trips) {
    json ids = json::array();
    for (int i : trip.sequence.nodes()) {
      ids.push_back(instance.targets()[i].id);
    }
    trips.push_back({{"vehicle", instance.vehicles()[trip.vehicle].id},
                     {"sequence", std::move(ids)},
                     {"duration_min", trip.duration}});
  }
  return {{"tau_min", solution.tau}, {"trips", std::move(trips)}};
}

Solution solution_from_json(const json& doc, const Instance& instance) {
  if (!doc.is_object() || !doc.contains("trips") || !doc.at("trips").is_array()) {
    throw InputError("solution: \"trips\" must be an array");
  }
  Solution solution;
  solution.loads.assign(instance.n_vehicles(), 0.0);
  for (const auto& item : doc.at("trips")) {
    const int vehicle_id = field<int>(item, "vehicle", "trip");
    const auto u = instance.vehicle_index(vehicle_id);
    if (!u) {
      throw InputError("solution references unknown vehicle " + std::to_string(vehicle_id));
    }
    std::vector<int> nodes;
    for (int id : field<std::vector<int>>(item, "sequence", "trip")) {
      const auto i = instance.target_index(id);
      if (!i) {
        throw InputError("solution references unknown target " + std::to_string(id));
      }
      nodes.push_back(*i);
    }
    Trip trip;
    trip.sequence = Sequence(instance, std::move(nodes));
    trip.vehicle = *u;
    trip.duration = item.contains("duration_min") ? field<double>(item, "duration_min", "trip")
                                                  : trip_duration(instance, trip.sequence, *u);
    solution.loads[*u] += trip.duration;
    solution.trips.push_back(std::move(trip));
  }
  solution.tau = field<double>(doc, "tau_min", "solution");
  solution.objective_value = solution.tau;
  return solution;
}

json outcome_to_json(const SolveOutcome& outcome) {
  json doc;
  doc["status"] = to_string(outcome.status);
  doc["objective"] = to_string(outcome.objective);
  if (outcome.solution) {
    doc["objective_value"] = outcome.solution->objective_value;
  } else {
    doc["objective_value"] = nullptr;
  }
  if (std::isfinite(outcome.best_lower_bound)) {
    doc["best_lower_bound"] = outcome.best_lower_bound;
  } else {
    doc["best_lower_bound"] = nullptr;
  }
  doc["nodes"] = outcome.nodes_explored;
  doc["wall_time_s"] = outcome.wall_time;
  doc["pool_size"] = outcome.pool_size;
  doc["cap_hit"] = outcome.cap_hit;
  return doc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  write_text_file(path, instance_to_json(instance).dump(2) + "\n");
}

} // namespace mdmt::io
