#include "mdmt/exact.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "mdmt/error.hpp"
#include "mdmt/heuristics.hpp"

namespace mdmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Option {
  int vehicle;
  double duration; // t_ku
  double travel; // t_ku minus service
};

// Flat, search-friendly copy of the pool.
struct Prepared {
  int n = 0;
  int m = 0;
  int words = 1;
  std::vector<std::uint64_t> bits; // sequence k occupies [k*words, (k+1)*words)
  std::vector<std::vector<int>> nodes;
  std::vector<std::vector<Option>> options;
  std::vector<double> share; // objective cost of k spread over its targets
  std::vector<std::vector<int>> by_share; // covering list of i, cheapest share first
  std::vector<int> vehicle_class;
  std::vector<std::vector<int>> classes; // groups of interchangeable vehicles
  std::vector<double> singleton; // n*m, +inf when u cannot serve i alone
  std::vector<double> cx, cy; // target centroid of each sequence
  bool metric = true;
  Objective objective = Objective::CompletionTime;

  const std::uint64_t* seq_bits(int k) const {
    return bits.data() + static_cast<std::size_t>(k) * words;
  }
};

Prepared prepare(const SequencePool& pool, const Instance& instance, Objective objective) {
  Prepared p;
  p.n = instance.n_targets();
  p.m = instance.n_vehicles();
  p.words = std::max(1, (p.n + 63) / 64);
  p.objective = objective;
  p.metric = !instance.has_explicit_matrix();
  const auto& entries = pool.entries();
  const int count = static_cast<int>(entries.size());
  p.bits.assign(static_cast<std::size_t>(count) * p.words, 0);
  p.nodes.resize(count);
  p.options.resize(count);
  p.share.resize(count);
  p.cx.assign(count, 0.0);
  p.cy.assign(count, 0.0);
  for (int k = 0; k < count; ++k) {
    const PoolEntry& e = entries[k];
    p.nodes[k] = e.sequence.nodes();
    for (int i : e.sequence.nodes()) {
      p.cx[k] += instance.targets()[i].x / static_cast<double>(e.sequence.size());
      p.cy[k] += instance.targets()[i].y / static_cast<double>(e.sequence.size());
    }
    for (int i : e.sequence.nodes()) {
      p.bits[static_cast<std::size_t>(k) * p.words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
    std::vector<Option> opts;
    for (std::size_t a = 0; a < e.vehicles.size(); ++a) {
      opts.push_back({e.vehicles[a], e.trip_durations[a],
                      e.trip_durations[a] - e.sequence.service()});
    }
    if (objective == Objective::TotalTravelDistance) {
      // Only the cheapest vehicle matters for travel; ties go to the
      // shorter trip, then the lower index.
      const auto best = std::min_element(opts.begin(), opts.end(), [](const Option& a, const Option& b) {
        if (a.travel != b.travel) {
          return a.travel < b.travel;
        }
        if (a.duration != b.duration) {
          return a.duration < b.duration;
        }
        return a.vehicle < b.vehicle;
      });
      opts = {*best};
      p.share[k] = best->travel / static_cast<double>(e.sequence.size());
    } else {
      double best = kInf;
      for (const Option& o : opts) {
        best = std::min(best, o.duration);
      }
      p.share[k] = best / static_cast<double>(e.sequence.size());
    }
    p.options[k] = std::move(opts);
  }
  p.by_share = pool.covering();
  for (auto& list : p.by_share) {
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return p.share[a] < p.share[b]; });
  }

  p.vehicle_class.assign(p.m, -1);
  for (int u = 0; u < p.m; ++u) {
    if (p.vehicle_class[u] >= 0) {
      continue;
    }
    p.vehicle_class[u] = static_cast<int>(p.classes.size());
    std::vector<int> group{u};
    const Vehicle& vu = instance.vehicles()[u];
    for (int w = u + 1; w < p.m; ++w) {
      const Vehicle& vw = instance.vehicles()[w];
      if (p.vehicle_class[w] < 0 && vw.home_depot == vu.home_depot && vw.budget == vu.budget) {
        p.vehicle_class[w] = p.vehicle_class[u];
        group.push_back(w);
      }
    }
    p.classes.push_back(std::move(group));
  }

  p.singleton.assign(static_cast<std::size_t>(p.n) * p.m, kInf);
  for (int i = 0; i < p.n; ++i) {
    for (int u = 0; u < p.m; ++u) {
      const int home = instance.home_node(u);
      const double trip = instance.travel(home, i) + instance.service(i) + instance.travel(i, home);
      if (trip <= instance.budget(u) + kTimeEps && instance.allows(i, u)) {
        p.singleton[static_cast<std::size_t>(i) * p.m + u] = trip;
      }
    }
  }
  return p;
}

bool disjoint(const std::uint64_t* a, const std::uint64_t* b, int words) {
  for (int w = 0; w < words; ++w) {
    if (a[w] & b[w]) {
      return false;
    }
  }
  return true;
}

bool is_set(const std::vector<std::uint64_t>& bits, int i) {
  return (bits[i / 64] >> (i % 64)) & 1U;
}

struct Scan {
  double bound = kInf;
  int branch = -1; // uncovered target with the fewest remaining options
  bool dead = false;
};

// Computes the node bound and the fail-first branching target. `min_share`
// receives, for every uncovered target, the cheapest share among the
// sequences still available. `cutoff` lets the count stop early.
Scan scan_node(const Prepared& p,
               const std::vector<std::uint64_t>& covered,
               std::span<const double> loads,
               double committed,
               std::vector<double>& min_share) {
  Scan result;
  double share_sum = 0.0;
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  double singleton_bound = 0.0;
  double min_load = kInf;
  for (double l : loads) {
    min_load = std::min(min_load, l);
  }
  const bool completion = p.objective == Objective::CompletionTime;

  for (int i = 0; i < p.n; ++i) {
    if (is_set(covered, i)) {
      continue;
    }
    const auto& list = p.by_share[i];
    std::size_t count = 0;
    double first = kInf;
    for (int k : list) {
      if (!disjoint(p.seq_bits(k), covered.data(), p.words)) {
        continue;
      }
      if (count == 0) {
        first = p.share[k];
      }
      if (++count >= best_count) {
        break;
      }
    }
    if (count == 0) {
      result.dead = true;
      return result;
    }
    min_share[i] = first;
    share_sum += first;
    if (count < best_count) {
      best_count = count;
      result.branch = i;
    }
    if (completion && p.metric) {
      // Any trip through i is at least the singleton trip of i for the
      // vehicle that flies it.
      double best = kInf;
      for (int u = 0; u < p.m; ++u) {
        best = std::min(best, loads[u] + p.singleton[static_cast<std::size_t>(i) * p.m + u]);
      }
      singleton_bound = std::max(singleton_bound, best);
    }
  }

  if (completion) {
    double max_load = 0.0;
    double total = 0.0;
    for (double l : loads) {
      max_load = std::max(max_load, l);
      total += l;
    }
    result.bound = std::max({max_load, (total + share_sum) / p.m, singleton_bound});
  } else {
    result.bound = committed + share_sum;
  }
  return result;
}

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : key) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return h;
  }
};

struct Choice {
  int sequence;
  int vehicle;
  double duration;
  double travel;
};

class BranchAndBound {
public:
  BranchAndBound(const Prepared& p, const ExactOptions& options, Clock::time_point start)
    : p_(p), options_(options), start_(start) {
    covered_.assign(p.words, 0);
    loads_.assign(p.m, 0.0);
    min_share_.assign(p.n, 0.0);
  }

  void set_incumbent(double value) { incumbent_ = value; }

  // Commits a choice before run(); it becomes part of every solution found.
  void fix(const Choice& c) { apply(c); }

  void run() {
    if (p_.n == 0) {
      improve({});
      return;
    }
    root_bound_ = scan_node(p_, covered_, loads_, committed_, min_share_).bound;
    dfs(0);
  }

  bool aborted() const { return aborted_; }
  bool improved() const { return improved_; }
  double incumbent() const { return incumbent_; }
  double open_bound() const { return open_bound_; }
  std::size_t nodes() const { return nodes_; }
  const std::vector<Choice>& best() const { return best_; }

private:
  struct Child {
    double bound;
    int sequence;
    int option;
  };

  double leaf_value() const {
    if (p_.objective == Objective::CompletionTime) {
      return *std::max_element(loads_.begin(), loads_.end());
    }
    return committed_;
  }

  void improve(const std::vector<Choice>& path) {
    incumbent_ = p_.n == 0 ? 0.0 : leaf_value();
    best_ = path;
    improved_ = true;
  }

  bool out_of_budget() {
    if (nodes_ >= options_.node_limit) {
      return true;
    }
    if ((nodes_ & 0xFF) == 0 && std::isfinite(options_.time_limit) &&
        seconds_since(start_) > options_.time_limit) {
      return true;
    }
    return false;
  }

  // True when an equal-or-better state with the same covered set was
  // already expanded.
  bool memo_dominated() {
    if (!options_.memo) {
      return false;
    }
    if (p_.objective == Objective::TotalTravelDistance) {
      auto [it, inserted] = memo_scalar_.try_emplace(covered_, committed_);
      if (inserted) {
        return false;
      }
      if (it->second <= committed_ + kTimeEps) {
        return true;
      }
      it->second = committed_;
      return false;
    }

    canonical_.assign(loads_.begin(), loads_.end());
    for (const auto& group : p_.classes) {
      if (group.size() > 1) {
        scratch_.clear();
        for (int u : group) {
          scratch_.push_back(loads_[u]);
        }
        std::sort(scratch_.begin(), scratch_.end());
        for (std::size_t a = 0; a < group.size(); ++a) {
          canonical_[group[a]] = scratch_[a];
        }
      }
    }
    const int m = p_.m;
    auto it = memo_.find(covered_);
    if (it != memo_.end()) {
      auto& stored = it->second;
      for (std::size_t off = 0; off < stored.size(); off += m) {
        bool dominated = true;
        for (int u = 0; u < m && dominated; ++u) {
          dominated = stored[off + u] <= canonical_[u] + kTimeEps;
        }
        if (dominated) {
          return true;
        }
      }
      // Drop stored vectors the new one dominates, then append it.
      std::size_t write = 0;
      for (std::size_t off = 0; off < stored.size(); off += m) {
        bool worse = true;
        for (int u = 0; u < m && worse; ++u) {
          worse = canonical_[u] <= stored[off + u] + kTimeEps;
        }
        if (!worse) {
          std::copy_n(stored.begin() + off, m, stored.begin() + write);
          write += m;
        }
      }
      memo_size_ -= (stored.size() - write) / m;
      stored.resize(write);
      if (memo_size_ < options_.memo_limit && stored.size() < 64u * m) {
        stored.insert(stored.end(), canonical_.begin(), canonical_.end());
        ++memo_size_;
      }
      return false;
    }
    if (memo_size_ < options_.memo_limit) {
      memo_.emplace(covered_, canonical_);
      ++memo_size_;
    }
    return false;
  }

  void apply(const Choice& c) {
    const auto* bits = p_.seq_bits(c.sequence);
    for (int w = 0; w < p_.words; ++w) {
      covered_[w] |= bits[w];
    }
    covered_count_ += static_cast<int>(p_.nodes[c.sequence].size());
    loads_[c.vehicle] += c.duration;
    committed_ += c.travel;
    path_.push_back(c);
  }

  void undo(const Choice& c, double load_before, double committed_before) {
    const auto* bits = p_.seq_bits(c.sequence);
    for (int w = 0; w < p_.words; ++w) {
      covered_[w] &= ~bits[w];
    }
    covered_count_ -= static_cast<int>(p_.nodes[c.sequence].size());
    loads_[c.vehicle] = load_before;
    committed_ = committed_before;
    path_.pop_back();
  }

  bool prunable(double bound) const { return bound >= incumbent_ - kTimeEps; }

  void dfs(int depth) {
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      if (depth == 0) {
        open_bound_ = std::min(open_bound_, root_bound_);
      }
      return;
    }
    if (covered_count_ == p_.n) {
      if (leaf_value() < incumbent_ - kTimeEps) {
        improve(path_);
      }
      return;
    }

    const Scan scan = scan_node(p_, covered_, loads_, committed_, min_share_);
    if (scan.dead || prunable(scan.bound)) {
      return;
    }
    if (memo_dominated()) {
      return;
    }

    // Children fix one covering sequence and one vehicle for the branching
    // target. The bound of a child drops the shares of the targets it covers.
    const int target = scan.branch;
    double total = 0.0;
    double max_load = 0.0;
    for (double l : loads_) {
      total += l;
      max_load = std::max(max_load, l);
    }
    double share_sum = 0.0;
    for (int i = 0; i < p_.n; ++i) {
      if (!is_set(covered_, i)) {
        share_sum += min_share_[i];
      }
    }

    std::vector<Child> children;
    for (int k : p_.by_share[target]) {
      if (!disjoint(p_.seq_bits(k), covered_.data(), p_.words)) {
        continue;
      }
      double covered_share = 0.0;
      for (int i : p_.nodes[k]) {
        covered_share += min_share_[i];
      }
      const double rest = std::max(0.0, share_sum - covered_share);
      const auto& opts = p_.options[k];
      for (int o = 0; o < static_cast<int>(opts.size()); ++o) {
        const Option& opt = opts[o];
        if (symmetric_duplicate(opts, o)) {
          continue;
        }
        double bound;
        if (p_.objective == Objective::CompletionTime) {
          const double load = loads_[opt.vehicle] + opt.duration;
          bound = std::max({max_load, load, (total + opt.duration + rest) / p_.m});
        } else {
          bound = committed_ + opt.travel + rest;
        }
        if (!prunable(bound)) {
          children.push_back({bound, k, o});
        }
      }
    }
    std::sort(children.begin(), children.end(), [&](const Child& a, const Child& b) {
      if (a.bound != b.bound) {
        return a.bound < b.bound;
      }
      const double da = p_.options[a.sequence][a.option].duration;
      const double db = p_.options[b.sequence][b.option].duration;
      if (da != db) {
        return da < db;
      }
      return std::tie(a.sequence, a.option) < std::tie(b.sequence, b.option);
    });

    for (std::size_t c = 0; c < children.size(); ++c) {
      const Child& child = children[c];
      if (prunable(child.bound)) {
        continue;
      }
      const Option& opt = p_.options[child.sequence][child.option];
      const Choice choice{child.sequence, opt.vehicle, opt.duration, opt.travel};
      const double load_before = loads_[opt.vehicle];
      const double committed_before = committed_;
      apply(choice);
      dfs(depth + 1);
      undo(choice, load_before, committed_before);
      if (aborted_) {
        for (std::size_t rest = c; rest < children.size(); ++rest) {
          open_bound_ = std::min(open_bound_, children[rest].bound);
        }
        return;
      }
    }
  }

  // Vehicles of one class holding the same load are interchangeable; only
  // the first of them is branched on.
  bool symmetric_duplicate(const std::vector<Option>& opts, int o) const {
    const int u = opts[o].vehicle;
    for (int prev = 0; prev < o; ++prev) {
      const int w = opts[prev].vehicle;
      if (p_.vehicle_class[w] == p_.vehicle_class[u] &&
          std::abs(loads_[w] - loads_[u]) <= kTimeEps) {
        return true;
      }
    }
    return false;
  }

  const Prepared& p_;
  const ExactOptions& options_;
  Clock::time_point start_;

  std::vector<std::uint64_t> covered_;
  int covered_count_ = 0;
  std::vector<double> loads_;
  double committed_ = 0.0;
  std::vector<Choice> path_;
  std::vector<double> min_share_;

  double incumbent_ = kInf;
  bool improved_ = false;
  std::vector<Choice> best_;
  double open_bound_ = kInf;
  double root_bound_ = 0.0;
  bool aborted_ = false;
  std::size_t nodes_ = 0;

  std::unordered_map<std::vector<std::uint64_t>, std::vector<double>, WordsHash> memo_;
  std::unordered_map<std::vector<std::uint64_t>, double, WordsHash> memo_scalar_;
  std::size_t memo_size_ = 0;
  std::vector<double> canonical_;
  std::vector<double> scratch_;
};

// Frees a group of neighbouring trips, re-solves the freed targets with the
// other trips held fixed and keeps strict improvements. Groups grow when a
// full round over all seed trips brings nothing.
void local_search(const Prepared& p,
                  const ExactOptions& options,
                  Clock::time_point deadline,
                  std::vector<Choice>& current,
                  double& value,
                  std::size_t& nodes) {
  std::vector<int> group_sizes;
  for (int size = 12; size < p.n; size += 8) {
    group_sizes.push_back(size);
  }

  std::size_t level = 0;
  while (level < group_sizes.size()) {
    const int size = group_sizes[level];
    const int trips = static_cast<int>(current.size());

    // Seeds: trips of the most loaded vehicle first for completion time,
    // costliest trips first otherwise.
    std::vector<double> loads(p.m, 0.0);
    for (const Choice& c : current) {
      loads[c.vehicle] += c.duration;
    }
    std::vector<int> seeds(trips);
    std::iota(seeds.begin(), seeds.end(), 0);
    std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) {
      const Choice& ca = current[a];
      const Choice& cb = current[b];
      if (p.objective == Objective::CompletionTime) {
        if (loads[ca.vehicle] != loads[cb.vehicle]) {
          return loads[ca.vehicle] > loads[cb.vehicle];
        }
        return ca.duration > cb.duration;
      }
      return ca.travel > cb.travel;
    });

    bool improved = false;
    for (int seed : seeds) {
      if (Clock::now() >= deadline) {
        return;
      }
      const int ks = current[seed].sequence;
      std::vector<int> near(trips);
      std::iota(near.begin(), near.end(), 0);
      auto dist2 = [&](int t) {
        const int k = current[t].sequence;
        const double dx = p.cx[k] - p.cx[ks];
        const double dy = p.cy[k] - p.cy[ks];
        return dx * dx + dy * dy;
      };
      std::stable_sort(near.begin(), near.end(), [&](int a, int b) { return dist2(a) < dist2(b); });
      std::vector<char> freed(trips, 0);
      int count = 0;
      for (int t : near) {
        if (count >= size) {
          break;
        }
        freed[t] = 1;
        count += static_cast<int>(p.nodes[current[t].sequence].size());
      }

      ExactOptions sub = options;
      sub.node_limit = options.local_search_nodes;
      sub.time_limit = std::chrono::duration<double>(deadline - Clock::now()).count();
      BranchAndBound search(p, sub, Clock::now());
      for (int t = 0; t < trips; ++t) {
        if (!freed[t]) {
          search.fix(current[t]);
        }
      }
      search.set_incumbent(value);
      search.run();
      nodes += search.nodes();
      if (search.improved()) {
        current = search.best();
        value = search.incumbent();
        improved = true;
        break;
      }
    }
    level = improved ? 0 : level + 1;
  }
}

double objective_of(const Solution& solution, const Instance& instance, Objective objective) {
  return objective == Objective::CompletionTime ? solution.tau
                                                : total_travel_distance(solution, instance);
}

} // namespace

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::CompletionTime: return "completion_time";
    case Objective::TotalTravelDistance: return "total_travel_distance";
  }
  return "unknown";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "OPTIMAL";
    case SolveStatus::FeasibleTimeLimit: return "FEASIBLE_TIME_LIMIT";
    case SolveStatus::Infeasible: return "INFEASIBLE";
    case SolveStatus::PoolInsufficient: return "POOL_INSUFFICIENT";
    case SolveStatus::Feasible: return "FEASIBLE";
  }
  return "UNKNOWN";
}

std::optional<Objective> parse_objective(const std::string& text) {
  if (text == "ct" || text == "completion_time" || text == "completion-time") {
    return Objective::CompletionTime;
  }
  if (text == "td" || text == "total_travel_distance" || text == "total-travel-distance" ||
      text == "distance") {
    return Objective::TotalTravelDistance;
  }
  return std::nullopt;
}

SolveOutcome solve_exact(const SequencePool& pool,
                         const Instance& instance,
                         Objective objective,
                         double time_limit) {
  ExactOptions options;
  options.time_limit = time_limit;
  return solve_exact(pool, instance, objective, options);
}

SolveOutcome solve_exact(const SequencePool& pool,
                         const Instance& instance,
                         Objective objective,
                         const ExactOptions& options) {
  const auto start = Clock::now();
  if (pool.n_targets() != instance.n_targets()) {
    throw InputError("pool was built for a different instance");
  }
  SolveOutcome outcome;
  outcome.objective = objective;
  outcome.pool_size = pool.size();
  outcome.cap_hit = pool.stats().cap_hit;

  const auto covering = pool.covering();
  for (const auto& list : covering) {
    if (list.empty()) {
      outcome.status = SolveStatus::PoolInsufficient;
      outcome.best_lower_bound = kInf;
      outcome.wall_time = seconds_since(start);
      return outcome;
    }
  }

  const Prepared prepared = prepare(pool, instance, objective);

  std::optional<Solution> warm = options.warm_start;
  if (!warm && options.greedy_warm_start && instance.n_targets() > 0) {
    warm = solve_h_greedy(instance).solution;
  }
  double incumbent = warm ? objective_of(*warm, instance, objective) : kInf;

  // Primal phase over the pool: first dive, then local re-optimisation.
  std::vector<Choice> primal;
  std::size_t nodes = 0;
  if (options.local_search && prepared.n > 0) {
    const auto now = Clock::now();
    const Clock::time_point deadline =
      std::isfinite(options.time_limit)
        ? start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(options.time_limit * 0.5))
        : Clock::time_point::max();
    ExactOptions dive_options = options;
    dive_options.node_limit = std::min<std::size_t>(options.node_limit, 64 * (prepared.n + 16));
    dive_options.time_limit = std::chrono::duration<double>(deadline - now).count();
    BranchAndBound dive(prepared, dive_options, now);
    dive.set_incumbent(incumbent);
    dive.run();
    nodes += dive.nodes();
    if (dive.improved()) {
      primal = dive.best();
      double value = dive.incumbent();
      local_search(prepared, options, deadline, primal, value, nodes);
      incumbent = value;
    }
  }

  BranchAndBound search(prepared, options, start);
  search.set_incumbent(incumbent);
  search.run();
  nodes += search.nodes();

  outcome.nodes_explored = nodes;
  const std::vector<Choice>* chosen_path = search.improved() ? &search.best()
                                           : !primal.empty()  ? &primal
                                                              : nullptr;
  if (chosen_path) {
    std::vector<std::pair<Sequence, int>> chosen;
    for (const Choice& c : *chosen_path) {
      chosen.emplace_back(pool.entry(c.sequence).sequence, c.vehicle);
    }
    outcome.solution = make_solution(instance, std::move(chosen));
  } else {
    outcome.solution = warm;
  }
  if (outcome.solution) {
    outcome.solution->objective_value = objective_of(*outcome.solution, instance, objective);
  }

  const double final_value = outcome.solution ? outcome.solution->objective_value : kInf;
  if (search.aborted()) {
    outcome.status = outcome.solution ? SolveStatus::FeasibleTimeLimit : SolveStatus::Infeasible;
    outcome.best_lower_bound = std::min(final_value, search.open_bound());
  } else {
    outcome.status = outcome.solution ? SolveStatus::Optimal : SolveStatus::Infeasible;
    outcome.best_lower_bound = final_value;
  }
  outcome.wall_time = seconds_since(start);
  return outcome;
}

SolveOutcome solve_exact_full(const Instance& instance,
                              Objective objective,
                              const ExactOptions& options,
                              std::size_t enumeration_cap) {
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (std::isfinite(options.time_limit)) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(options.time_limit));
  }
  try {
    SequencePool pool = enumerate_all_feasible(instance, enumeration_cap, deadline);
    ExactOptions remaining = options;
    remaining.time_limit = std::max(0.0, options.time_limit - seconds_since(start));
    SolveOutcome outcome = solve_exact(pool, instance, objective, remaining);
    outcome.wall_time = seconds_since(start);
    return outcome;
  } catch (const CapExceeded&) {
    SolveOutcome outcome;
    outcome.objective = objective;
    outcome.cap_hit = true;
    outcome.solution = options.warm_start ? options.warm_start : solve_h_greedy(instance).solution;
    if (outcome.solution) {
      outcome.solution->objective_value = objective_of(*outcome.solution, instance, objective);
    }
    outcome.status = outcome.solution ? SolveStatus::FeasibleTimeLimit : SolveStatus::Infeasible;
    outcome.best_lower_bound = 0.0;
    outcome.wall_time = seconds_since(start);
    return outcome;
  }
}

Assignment assign_min_makespan(std::span<const Sequence> selected, const Instance& instance) {
  const int count = static_cast<int>(selected.size());
  const int m = instance.n_vehicles();
  std::vector<std::vector<std::pair<int, double>>> options(count);
  std::vector<double> cheapest(count, kInf);
  for (int s = 0; s < count; ++s) {
    for (int u = 0; u < m; ++u) {
      if (is_compatible(instance, selected[s], u)) {
        const double t = trip_duration(instance, selected[s], u);
        options[s].emplace_back(u, t);
        cheapest[s] = std::min(cheapest[s], t);
      }
    }
    if (options[s].empty()) {
      throw InputError("sequence " + std::to_string(s) + " fits no vehicle");
    }
  }

  std::vector<int> vclass(m);
  for (int u = 0; u < m; ++u) {
    vclass[u] = u;
    for (int w = 0; w < u; ++w) {
      const Vehicle& a = instance.vehicles()[u];
      const Vehicle& b = instance.vehicles()[w];
      if (a.home_depot == b.home_depot && a.budget == b.budget) {
        vclass[u] = vclass[w];
        break;
      }
    }
  }

  // Longest first makes both the greedy start and the pruning stronger.
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return cheapest[a] > cheapest[b]; });
  std::vector<double> suffix(count + 1, 0.0);
  for (int p = count - 1; p >= 0; --p) {
    suffix[p] = suffix[p + 1] + cheapest[order[p]];
  }

  Assignment best;
  best.vehicle_of.assign(count, -1);
  best.loads.assign(m, 0.0);
  for (int s : order) {
    auto pick = std::min_element(options[s].begin(), options[s].end(), [&](const auto& a, const auto& b) {
      return best.loads[a.first] + a.second < best.loads[b.first] + b.second;
    });
    best.vehicle_of[s] = pick->first;
    best.loads[pick->first] += pick->second;
  }
  best.tau = count == 0 ? 0.0 : *std::max_element(best.loads.begin(), best.loads.end());

  std::vector<double> loads(m, 0.0);
  std::vector<int> current(count, -1);
  auto dfs = [&](auto&& self, int p, double total) -> void {
    const double max_load = *std::max_element(loads.begin(), loads.end());
    if (p == count) {
      if (max_load < best.tau - kTimeEps) {
        best.tau = max_load;
        best.loads = loads;
        best.vehicle_of = current;
      }
      return;
    }
    if (std::max(max_load, (total + suffix[p]) / m) >= best.tau - kTimeEps) {
      return;
    }
    const int s = order[p];
    for (std::size_t o = 0; o < options[s].size(); ++o) {
      const auto [u, t] = options[s][o];
      bool duplicate = false;
      for (std::size_t prev = 0; prev < o && !duplicate; ++prev) {
        const int w = options[s][prev].first;
        duplicate = vclass[w] == vclass[u] && std::abs(loads[w] - loads[u]) <= kTimeEps;
      }
      if (duplicate || loads[u] + t >= best.tau - kTimeEps) {
        continue;
      }
      const double before = loads[u];
      loads[u] += t;
      current[s] = u;
      self(self, p + 1, total + t);
      loads[u] = before;
      current[s] = -1;
    }
  };
  if (count > 0 && m > 1) {
    dfs(dfs, 0, 0.0);
  }
  return best;
}

namespace detail {

double node_lower_bound(const SequencePool& pool,
                        const Instance& instance,
                        Objective objective,
                        std::span<const char> covered,
                        std::span<const double> loads,
                        double committed_travel) {
  const Prepared p = prepare(pool, instance, objective);
  std::vector<std::uint64_t> bits(p.words, 0);
  bool all = true;
  for (int i = 0; i < p.n; ++i) {
    if (covered[i]) {
      bits[i / 64] |= std::uint64_t{1} << (i % 64);
    } else {
      all = false;
    }
  }
  if (all) {
    return objective == Objective::CompletionTime
             ? (loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end()))
             : committed_travel;
  }
  std::vector<double> min_share(p.n, 0.0);
  const Scan scan = scan_node(p, bits, loads, committed_travel, min_share);
  return scan.dead ? kInf : scan.bound;
}

} // namespace detail

} // namespace mdmt
