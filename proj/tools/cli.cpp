#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mdmt/bench.hpp"
#include "mdmt/error.hpp"
#include "mdmt/exact.hpp"
#include "mdmt/heuristics.hpp"
#include "mdmt/io.hpp"
#include "mdmt/pool.hpp"

namespace mdmt::cli {

namespace {

// Default per-depot budgets, in depot order.
const std::vector<double> kDefaultBudgets{50.0, 30.0, 40.0, 20.0};

struct GenFlags {
  int n = 20;
  int depots = 2;
  std::vector<int> corners;
  std::vector<double> budgets;
  std::vector<int> fleets;
  std::vector<double> service{5.0, 8.0};
  double speed = 1.0;
  double side = 15.0;
  std::uint64_t seed = 1;
  std::string out = "-";
};

struct SolveFlags {
  std::string input;
  std::string solver = "math";
  std::string objective = "ct";
  int nc = 3;
  long long kmax = 200'000;
  double time_limit = 600.0;
  long long node_limit = 0;
  long long cap = 2'000'000;
  std::string out;
  std::string outcome;
  std::string dump_pool;
};

struct BenchFlags {
  std::string config;
  std::string out_dir = "bench_out";
  int workers = 1;
};

struct RenderFlags {
  std::string instance;
  std::string solution;
  std::string out;
};

struct ValidateFlags {
  std::string instance;
  std::string solution;
};

std::size_t as_limit(long long v) {
  return v <= 0 ? kUnlimited : static_cast<std::size_t>(v);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  GeneratorParams params;
  params.n = f.n;
  params.side_km = f.side;
  params.speed = f.speed;
  if (f.depots < 1 || f.depots > 4) {
    throw InputError("--depots must be between 1 and 4");
  }
  params.corners.clear();
  if (!f.corners.empty()) {
    if (static_cast<int>(f.corners.size()) != f.depots) {
      throw InputError("--corners needs one entry per depot");
    }
    for (int c : f.corners) {
      if (c < 0 || c > 3) {
        throw InputError("--corners entries must be in [0, 3]");
      }
      params.corners.push_back(static_cast<Corner>(c));
    }
  } else {
    for (int d = 0; d < f.depots; ++d) {
      params.corners.push_back(static_cast<Corner>(d));
    }
  }
  std::vector<double> budgets = f.budgets;
  if (budgets.empty()) {
    budgets.assign(kDefaultBudgets.begin(), kDefaultBudgets.begin() + f.depots);
  }
  if (static_cast<int>(budgets.size()) != f.depots) {
    throw InputError("--budgets needs one entry per depot");
  }
  std::vector<int> fleets = f.fleets;
  if (fleets.empty()) {
    fleets.assign(f.depots, 1);
  }
  if (static_cast<int>(fleets.size()) != f.depots) {
    throw InputError("--fleets needs one entry per depot");
  }
  params.fleets.clear();
  for (int d = 0; d < f.depots; ++d) {
    params.fleets.push_back({fleets[d], budgets[d]});
  }
  if (f.service.size() != 2) {
    throw InputError("--service takes lo,hi");
  }
  params.service_lo = f.service[0];
  params.service_hi = f.service[1];
  const Instance instance = generate_random_instance(params, f.seed);
  emit(f.out, io::instance_to_json(instance).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const auto objective = parse_objective(f.objective);
  if (!objective) {
    throw InputError("--objective must be ct or td");
  }
  if (f.solver != "exact" && f.solver != "math" && f.solver != "tsp" && f.solver != "greedy") {
    throw InputError("--solver must be one of exact, math, tsp, greedy");
  }
  if (f.nc < 1) {
    throw InputError("--nc must be >= 1");
  }
  const Instance raw = io::read_instance(f.input);
  auto [instance, removed] = preprocess_unreachable(raw);
  if (!removed.empty()) {
    err << "preprocessing removed " << removed.size() << " unreachable target(s):";
    for (int id : removed) {
      err << ' ' << id;
    }
    err << '\n';
  }
  if (f.solver == "math" && as_limit(f.kmax) < static_cast<std::size_t>(instance.n_targets())) {
    throw InputError("--kmax must be at least the number of targets");
  }

  SolveOutcome outcome;
  try {
    if (f.solver == "exact") {
      ExactOptions options;
      options.time_limit = f.time_limit;
      options.node_limit = as_limit(f.node_limit);
      if (!f.dump_pool.empty()) {
        std::ofstream dump(f.dump_pool);
        try {
          dump_pool(dump, instance, enumerate_all_feasible(instance, as_limit(f.cap)));
        } catch (const CapExceeded& e) {
          err << e.what() << '\n';
        }
      }
      outcome = solve_exact_full(instance, *objective, options, as_limit(f.cap));
    } else if (f.solver == "math") {
      MatheuristicParams params;
      params.children = f.nc;
      params.max_sequences = as_limit(f.kmax);
      params.time_limit = f.time_limit;
      params.node_limit = as_limit(f.node_limit);
      if (!f.dump_pool.empty()) {
        std::ofstream dump(f.dump_pool);
        dump_pool(dump, instance, generate_heuristic_pool(instance, f.nc, params.max_sequences));
      }
      outcome = solve_matheuristic(instance, params, *objective);
    } else if (f.solver == "tsp") {
      outcome = solve_h_tsp(instance);
    } else {
      outcome = solve_h_greedy(instance);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    err << "solver failed: " << e.what() << '\n';
    return kExitFailure;
  }

  if (!outcome.solution) {
    err << "no solution: " << to_string(outcome.status) << '\n';
    return kExitFailure;
  }
  const auto solution_json = io::solution_to_json(*outcome.solution, instance);
  auto outcome_json = io::outcome_to_json(outcome);
  outcome_json["solver"] = f.solver;
  if (f.solver == "math") {
    outcome_json["nc"] = f.nc;
    outcome_json["kmax"] = f.kmax;
  }
  if (!f.out.empty()) {
    io::write_text_file(f.out, solution_json.dump(2) + "\n");
    const std::string outcome_path = f.outcome.empty() ? f.out + ".outcome.json" : f.outcome;
    io::write_text_file(outcome_path, outcome_json.dump(2) + "\n");
  } else if (!f.outcome.empty()) {
    io::write_text_file(f.outcome, outcome_json.dump(2) + "\n");
  }

  char line[128];
  std::snprintf(line, sizeof line, "%s %.6f %zu %.3f", to_string(outcome.status),
                outcome.solution->objective_value, outcome.solution->trips.size(),
                outcome.wall_time);
  out << line << '\n';
  return kExitOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  const bench::ExperimentConfig config = bench::read_config(f.config);
  bench::RunOptions options;
  options.out_dir = f.out_dir;
  options.workers = f.workers;
  const auto rows = bench::run_experiment(config, options);
  out << "wrote " << rows.size() << " rows to "
      << (std::filesystem::path(f.out_dir) / config.csv_name).string() << '\n';
  return kExitOk;
}

int cmd_render(const RenderFlags& f) {
  const Instance instance = io::read_instance(f.instance);
  const Solution solution = io::solution_from_json(io::read_json_file(f.solution), instance);
  bench::render_solution(instance, solution, f.out);
  return kExitOk;
}

int cmd_validate(const ValidateFlags& f, std::ostream& out) {
  const Instance instance = io::read_instance(f.instance);
  const Solution solution = io::solution_from_json(io::read_json_file(f.solution), instance);
  const ValidationReport report = validate_solution(instance, solution);
  if (report.feasible) {
    out << "feasible\n";
    return kExitOk;
  }
  out << "infeasible\n";
  for (const auto& v : report.violations) {
    out << to_string(v.kind) << ": " << v.detail << '\n';
  }
  return kExitFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-depot multi-trip routing with completion-time minimisation", "mdmt"};
  app.require_subcommand(1, 1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.n, "Number of targets");
  gen_cmd->add_option("--depots", gen.depots, "Number of depots (1-4), placed on square corners");
  gen_cmd->add_option("--corners", gen.corners, "Corner per depot: 0=LL 1=LR 2=UR 3=UL")->delimiter(',');
  gen_cmd->add_option("--budgets", gen.budgets, "Budget per depot in minutes")->delimiter(',');
  gen_cmd->add_option("--fleets", gen.fleets, "Vehicle count per depot")->delimiter(',');
  gen_cmd->add_option("--service", gen.service, "Service-time interval lo,hi (minutes)")->delimiter(',');
  gen_cmd->add_option("--speed", gen.speed, "Flying speed in km/min");
  gen_cmd->add_option("--side", gen.side, "Square side in km");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output path ('-' for stdout)");

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--input", solve.input, "Instance JSON")->required();
  solve_cmd->add_option("--solver", solve.solver, "exact, math, tsp or greedy");
  solve_cmd->add_option("--objective", solve.objective, "ct (completion time) or td (travel distance)");
  solve_cmd->add_option("--nc", solve.nc, "Children per sequence (matheuristic)");
  solve_cmd->add_option("--kmax", solve.kmax, "Max sequences (matheuristic), 0 = unlimited");
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds for the exact search");
  solve_cmd->add_option("--node-limit", solve.node_limit, "Search nodes, 0 = unlimited");
  solve_cmd->add_option("--cap", solve.cap, "Max sequences for full enumeration");
  solve_cmd->add_option("--out", solve.out, "Solution JSON path");
  solve_cmd->add_option("--outcome", solve.outcome, "Outcome JSON path (default <out>.outcome.json)");
  solve_cmd->add_option("--dump-pool", solve.dump_pool, "Write the sequence pool as text");

  BenchFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment config");
  bench_cmd->add_option("--config", bench_flags.config, "Experiment config JSON")->required();
  bench_cmd->add_option("--out-dir", bench_flags.out_dir, "Output directory");
  bench_cmd->add_option("--workers", bench_flags.workers, "Concurrent cells");

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "Render a solution as SVG");
  render_cmd->add_option("--instance", render.instance, "Instance JSON")->required();
  render_cmd->add_option("--solution", render.solution, "Solution JSON")->required();
  render_cmd->add_option("--out", render.out, "SVG path")->required();

  ValidateFlags validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution against an instance");
  validate_cmd->add_option("--instance", validate.instance, "Instance JSON")->required();
  validate_cmd->add_option("--solution", validate.solution, "Solution JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen_cmd) {
      return cmd_gen(gen, out);
    }
    if (*solve_cmd) {
      return cmd_solve(solve, out, err);
    }
    if (*bench_cmd) {
      return cmd_bench(bench_flags, out);
    }
    if (*render_cmd) {
      return cmd_render(render);
    }
    if (*validate_cmd) {
      return cmd_validate(validate, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace mdmt::cli
