#include "mdmt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mdmt/error.hpp"
#include "mdmt/io.hpp"

namespace mdmt::bench {

using nlohmann::json;

namespace {

Corner parse_corner(const json& value) {
  if (value.is_number_integer()) {
    const int c = value.get<int>();
    if (c < 0 || c > 3) {
      throw InputError("config: corner index must be in [0, 3]");
    }
    return static_cast<Corner>(c);
  }
  const std::string name = value.get<std::string>();
  if (name == "lower_left") return Corner::LowerLeft;
  if (name == "lower_right") return Corner::LowerRight;
  if (name == "upper_right") return Corner::UpperRight;
  if (name == "upper_left") return Corner::UpperLeft;
  throw InputError("config: unknown corner \"" + name + "\"");
}

std::size_t parse_limit(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") {
      return kUnlimited;
    }
    throw InputError("config: limits must be integers or \"inf\"");
  }
  const auto v = value.get<long long>();
  if (v < 0) {
    throw InputError("config: limits must be >= 0");
  }
  return v == 0 ? kUnlimited : static_cast<std::size_t>(v);
}

SolverSpec parse_solver(const json& item) {
  SolverSpec spec;
  const std::string kind = item.at("kind").get<std::string>();
  if (kind == "exact") {
    spec.kind = SolverKind::Exact;
  } else if (kind == "math") {
    spec.kind = SolverKind::Matheuristic;
  } else if (kind == "tsp") {
    spec.kind = SolverKind::Tsp;
  } else if (kind == "greedy") {
    spec.kind = SolverKind::Greedy;
  } else {
    throw InputError("config: unknown solver kind \"" + kind + "\"");
  }
  spec.id = item.value("id", kind);
  if (item.contains("objective")) {
    const auto objective = parse_objective(item.at("objective").get<std::string>());
    if (!objective) {
      throw InputError("config: unknown objective in solver " + spec.id);
    }
    spec.objective = *objective;
  }
  spec.children = item.value("nc", 3);
  if (item.contains("kmax")) {
    spec.max_sequences = parse_limit(item.at("kmax"));
  }
  if (item.contains("time_limit_s")) {
    spec.time_limit = item.at("time_limit_s").get<double>();
  }
  if (item.contains("node_limit")) {
    spec.node_limit = parse_limit(item.at("node_limit"));
  }
  spec.territory = item.value("territory", false);
  if (spec.children < 1) {
    throw InputError("config: nc must be >= 1 in solver " + spec.id);
  }
  return spec;
}

std::string format_double(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
  return buffer;
}

std::string cell_stem(const ExperimentConfig& config, const ResultRow& row) {
  return config.id + "_n" + std::to_string(row.n) + "_s" + std::to_string(row.seed) + "_" + row.solver;
}

ResultRow run_cell(const ExperimentConfig& config, const Instance& base, const SolverSpec& spec,
                   int n, std::uint64_t seed) {
  ResultRow row;
  row.seed = seed;
  row.n = n;
  row.config = config.id;
  row.solver = spec.id;
  row.objective = spec.objective;
  if (spec.kind == SolverKind::Matheuristic) {
    row.children = spec.children;
  }
  try {
    const Instance instance = spec.territory ? apply_territory_partition(base) : base;
    const auto start = Clock::now();
    SolveOutcome outcome;
    switch (spec.kind) {
      case SolverKind::Exact: {
        ExactOptions options;
        options.time_limit = spec.time_limit;
        options.node_limit = spec.node_limit;
        outcome = solve_exact_full(instance, spec.objective, options, config.enumeration_cap);
        break;
      }
      case SolverKind::Matheuristic: {
        MatheuristicParams params;
        params.children = spec.children;
        params.max_sequences = spec.max_sequences;
        params.time_limit = spec.time_limit;
        params.node_limit = spec.node_limit;
        outcome = solve_matheuristic(instance, params, spec.objective);
        break;
      }
      case SolverKind::Tsp:
        outcome = solve_h_tsp(instance);
        break;
      case SolverKind::Greedy:
        outcome = solve_h_greedy(instance);
        break;
    }
    row.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    row.pool_size = outcome.pool_size;
    row.cap_hit = outcome.cap_hit;
    row.status = to_string(outcome.status);
    if (outcome.solution) {
      // Metrics come from the instance, not from what the solver reports.
      const ValidationReport report = validate_solution(instance, *outcome.solution);
      std::vector<std::pair<Sequence, int>> pairs;
      for (const Trip& trip : outcome.solution->trips) {
        pairs.emplace_back(trip.sequence, trip.vehicle);
      }
      const Solution recomputed = make_solution(instance, std::move(pairs));
      row.completion_time = recomputed.tau;
      row.travel_distance = total_travel_distance(recomputed, instance);
      row.trips = static_cast<int>(recomputed.trips.size());
      if (!report.feasible) {
        row.status = "INVALID";
      }
      row.solution = std::move(outcome.solution);
    }
  } catch (const std::exception& e) {
    row.status = "ERROR";
    std::fprintf(stderr, "%s: %s\n", cell_stem(config, row).c_str(), e.what());
  }
  return row;
}

} // namespace

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig config;
  try {
    config.id = doc.value("id", std::string("experiment"));
    if (doc.contains("generator")) {
      const json& g = doc.at("generator");
      config.generator.side_km = g.value("side_km", 15.0);
      config.generator.speed = g.value("speed_km_per_min", 1.0);
      if (g.contains("corners")) {
        config.generator.corners.clear();
        for (const auto& c : g.at("corners")) {
          config.generator.corners.push_back(parse_corner(c));
        }
      }
      if (g.contains("fleets")) {
        config.generator.fleets.clear();
        for (const auto& f : g.at("fleets")) {
          config.generator.fleets.push_back({f.value("count", 1), f.at("budget_min").get<double>()});
        }
      }
      if (g.contains("service_min")) {
        const auto interval = g.at("service_min").get<std::vector<double>>();
        if (interval.size() != 2) {
          throw InputError("config: service_min must be [lo, hi]");
        }
        config.generator.service_lo = interval[0];
        config.generator.service_hi = interval[1];
      }
    }
    config.n_values = doc.at("n").get<std::vector<int>>();
    config.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& item : doc.at("solvers")) {
      config.solvers.push_back(parse_solver(item));
    }
    if (doc.contains("enumeration_cap")) {
      config.enumeration_cap = parse_limit(doc.at("enumeration_cap"));
    }
    config.record_timing = doc.value("record_timing", true);
    config.write_solutions = doc.value("write_solutions", true);
    config.render = doc.value("render", false);
    config.csv_name = doc.value("csv", config.id + ".csv");
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (config.seeds.empty()) {
    throw InputError("config: seed list is empty");
  }
  if (config.solvers.empty()) {
    throw InputError("config: solver list is empty");
  }
  if (config.n_values.empty()) {
    throw InputError("config: n list is empty");
  }
  for (int n : config.n_values) {
    if (n < 1) {
      throw InputError("config: every n must be >= 1");
    }
  }
  std::vector<std::string> ids;
  for (const auto& s : config.solvers) {
    ids.push_back(s.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("config: solver ids must be unique");
  }
  if (config.generator.fleets.size() != config.generator.corners.size()) {
    throw InputError("config: need one fleet per corner");
  }
  return config;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  return config_from_json(io::read_json_file(path));
}

std::string csv_line(const ResultRow& row, bool record_timing) {
  std::ostringstream out;
  out << row.seed << ',' << row.n << ',' << row.config << ',' << row.solver << ',';
  if (row.children) {
    out << *row.children;
  }
  out << ',' << (row.objective == Objective::CompletionTime ? "ct" : "td") << ','
      << format_double(row.completion_time, 6) << ',' << format_double(row.travel_distance, 6) << ','
      << row.trips << ',' << row.pool_size << ',' << (row.cap_hit ? "true" : "false") << ','
      << row.status << ',' << (record_timing ? format_double(row.wall_time, 3) : std::string("NA"));
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool record_timing) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << csv_line(row, record_timing) << '\n';
  }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (config.seeds.empty() || config.solvers.empty()) {
    throw InputError("experiment needs at least one seed and one solver");
  }

  struct Cell {
    int n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int n : config.n_values) {
    for (std::uint64_t seed : config.seeds) {
      cells.push_back({n, seed});
    }
  }

  std::optional<std::ofstream> partial;
  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    if (config.write_solutions || config.render) {
      std::filesystem::create_directories(*options.out_dir / "solutions");
    }
    partial.emplace(*options.out_dir / (config.csv_name + ".partial"), std::ios::trunc);
    if (!*partial) {
      throw IoError("cannot write into " + options.out_dir->string());
    }
    *partial << kCsvHeader << '\n';
  }

  std::vector<ResultRow> rows;
  std::mutex mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      GeneratorParams params = config.generator;
      params.n = cells[c].n;
      std::vector<ResultRow> local;
      std::optional<Instance> base;
      try {
        base = preprocess_unreachable(generate_random_instance(params, cells[c].seed)).instance;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "%s n=%d seed=%" PRIu64 ": %s\n", config.id.c_str(), cells[c].n,
                     cells[c].seed, e.what());
      }
      for (const SolverSpec& spec : config.solvers) {
        if (!base) {
          ResultRow row;
          row.seed = cells[c].seed;
          row.n = cells[c].n;
          row.config = config.id;
          row.solver = spec.id;
          row.objective = spec.objective;
          row.status = "ERROR";
          local.push_back(std::move(row));
          continue;
        }
        ResultRow row = run_cell(config, *base, spec, cells[c].n, cells[c].seed);
        if (options.out_dir && row.solution) {
          const auto stem = *options.out_dir / "solutions" / cell_stem(config, row);
          const Instance solved = spec.territory ? apply_territory_partition(*base) : *base;
          if (config.write_solutions) {
            io::write_text_file(stem.string() + ".json",
                                io::solution_to_json(*row.solution, solved).dump(2) + "\n");
          }
          if (config.render) {
            render_solution(solved, *row.solution, stem.string() + ".svg");
          }
        }
        local.push_back(std::move(row));
      }
      std::lock_guard lock(mutex);
      for (auto& row : local) {
        if (partial) {
          *partial << csv_line(row, config.record_timing) << '\n' << std::flush;
        }
        rows.push_back(std::move(row));
      }
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.n, a.seed, a.solver) < std::tie(b.n, b.seed, b.solver);
  });

  if (options.out_dir) {
    partial.reset();
    std::ostringstream csv;
    write_csv(csv, rows, config.record_timing);
    io::write_text_file(*options.out_dir / config.csv_name, csv.str());
    std::filesystem::remove(*options.out_dir / (config.csv_name + ".partial"));
  }
  return rows;
}

double gap_percent(double value, double reference) {
  if (!(reference > 0.0)) {
    throw InputError("gap_percent: reference must be > 0");
  }
  return 100.0 * (value - reference) / reference;
}

Instance apply_territory_partition(const Instance& instance) {
  if (instance.n_depots() != 4) {
    throw InputError("territory partition needs exactly four depots");
  }
  const auto& depots = instance.depots();
  double lo_x = depots[0].x, hi_x = depots[0].x, lo_y = depots[0].y, hi_y = depots[0].y;
  for (const auto& d : depots) {
    lo_x = std::min(lo_x, d.x);
    hi_x = std::max(hi_x, d.x);
    lo_y = std::min(lo_y, d.y);
    hi_y = std::max(hi_y, d.y);
  }
  const double side = hi_x - lo_x;
  const double tol = 1e-9 * std::max(1.0, side);
  if (!(side > 0.0) || std::abs((hi_y - lo_y) - side) > tol) {
    throw InputError("territory partition needs depots on the corners of a square");
  }
  std::vector<char> corner_used(4, 0);
  for (const auto& d : depots) {
    const bool left = std::abs(d.x - lo_x) <= tol;
    const bool right = std::abs(d.x - hi_x) <= tol;
    const bool bottom = std::abs(d.y - lo_y) <= tol;
    const bool top = std::abs(d.y - hi_y) <= tol;
    if (!(left || right) || !(bottom || top)) {
      throw InputError("territory partition needs depots on the corners of a square");
    }
    corner_used[(right ? 1 : 0) + (top ? 2 : 0)] = 1;
  }
  if (std::count(corner_used.begin(), corner_used.end(), 1) != 4) {
    throw InputError("territory partition needs one depot per corner");
  }

  // Identical fleets: same vehicle count and the same budget multiset.
  std::vector<std::vector<double>> budgets(4);
  for (const auto& v : instance.vehicles()) {
    budgets[v.home_depot].push_back(v.budget);
  }
  for (auto& b : budgets) {
    std::sort(b.begin(), b.end());
  }
  for (int d = 1; d < 4; ++d) {
    if (budgets[d] != budgets[0]) {
      throw InputError("territory partition needs identical fleets at every depot");
    }
  }

  const double mid_x = 0.5 * (lo_x + hi_x);
  const double mid_y = 0.5 * (lo_y + hi_y);
  std::vector<int> territory(instance.n_targets(), -1);
  for (int i = 0; i < instance.n_targets(); ++i) {
    const auto& t = instance.targets()[i];
    for (int d = 0; d < 4 && territory[i] < 0; ++d) {
      const auto& dep = depots[d];
      const double x0 = std::min(dep.x, mid_x), x1 = std::max(dep.x, mid_x);
      const double y0 = std::min(dep.y, mid_y), y1 = std::max(dep.y, mid_y);
      if (t.x >= x0 - tol && t.x <= x1 + tol && t.y >= y0 - tol && t.y <= y1 + tol) {
        territory[i] = d;
      }
    }
    if (territory[i] < 0) {
      // Outside the square: nearest depot.
      double best = std::numeric_limits<double>::infinity();
      for (int d = 0; d < 4; ++d) {
        const double dist = std::hypot(t.x - depots[d].x, t.y - depots[d].y);
        if (dist < best) {
          best = dist;
          territory[i] = d;
        }
      }
    }
  }
  Instance out = instance;
  out.set_territory(std::move(territory));
  return out;
}

} // namespace mdmt::bench
