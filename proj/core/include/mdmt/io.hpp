#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mdmt/exact.hpp"
#include "mdmt/instance.hpp"
#include "mdmt/solution.hpp"

namespace mdmt::io {

using nlohmann::json;

// Instance document:
//   {"speed_km_per_min": f,
//    "depots":   [{"id": int, "x": f, "y": f}],
//    "targets":  [{"id": int, "x": f, "y": f, "service_min": f}],
//    "vehicles": [{"id": int, "depot": int, "budget_min": f}]}
// Optional: "travel_matrix_min" (rows/cols = targets then depots) and a
// per-target "territory_depot" (depot id) for restricted instances.
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& doc);

// Solution document:
//   {"tau_min": f, "trips": [{"vehicle": int, "sequence": [target ids], "duration_min": f}]}
// Ids are external ids. Loads are rebuilt from the reported trip durations.
json solution_to_json(const Solution& solution, const Instance& instance);
Solution solution_from_json(const json& doc, const Instance& instance);

// {"status", "objective", "objective_value", "best_lower_bound", "nodes",
//  "wall_time_s", "pool_size", "cap_hit"}
json outcome_to_json(const SolveOutcome& outcome);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);

} // namespace mdmt::io
