#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdmt/exact.hpp"
#include "mdmt/heuristics.hpp"
#include "mdmt/instance.hpp"

namespace mdmt::bench {

enum class SolverKind { Exact, Matheuristic, Tsp, Greedy };

struct SolverSpec {
  std::string id;
  SolverKind kind = SolverKind::Matheuristic;
  Objective objective = Objective::CompletionTime;
  int children = 3; // N_c, matheuristic only
  std::size_t max_sequences = 200'000; // K_max, matheuristic only
  double time_limit = std::numeric_limits<double>::infinity();
  std::size_t node_limit = kUnlimited;
  bool territory = false; // solve the quadrant-restricted instance
};

struct ExperimentConfig {
  std::string id = "experiment";
  GeneratorParams generator; // generator.n is overridden by each entry of n_values
  std::vector<int> n_values;
  std::vector<SolverSpec> solvers;
  std::vector<std::uint64_t> seeds;
  std::size_t enumeration_cap = 2'000'000;
  // Wall-clock times make the CSV machine-dependent; turn off for
  // byte-reproducible output.
  bool record_timing = true;
  bool write_solutions = true;
  bool render = false;
  std::string csv_name = "results.csv";
};

struct ResultRow {
  std::uint64_t seed = 0;
  int n = 0;
  std::string config;
  std::string solver;
  std::optional<int> children;
  Objective objective = Objective::CompletionTime;
  double completion_time = 0.0;
  double travel_distance = 0.0;
  int trips = 0;
  std::size_t pool_size = 0;
  bool cap_hit = false;
  std::string status;
  double wall_time = 0.0;
  std::optional<Solution> solution;
};

inline constexpr const char* kCsvHeader =
  "seed,n,config,solver,nc,objective,ct_min,td_min,trips,pool_size,cap_hit,status,wall_s";

ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig read_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir; // CSV + per-cell artifacts
  int workers = 1;
};

// Generates, preprocesses, solves and validates every (n, seed, solver)
// cell. Cell failures are reported in the row status. Rows come back sorted
// by (n, seed, solver id).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::string csv_line(const ResultRow& row, bool record_timing);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool record_timing);

// 100 * (value - reference) / reference. Throws InputError if reference <= 0.
double gap_percent(double value, double reference);

// Restricts each target to the vehicles of the depot whose quarter of the
// square contains it (boundary ties go to the lower depot index). Requires
// four depots on the corners of a square with identical fleets.
Instance apply_territory_partition(const Instance& instance);

// SVG route plot: square boundary, depots as squares, targets as dots, one
// closed polyline per trip coloured by vehicle, legend with loads and tau.
std::string render_svg(const Instance& instance, const Solution& solution);
void render_solution(const Instance& instance, const Solution& solution,
                     const std::filesystem::path& path);

} // namespace mdmt::bench
