#include "mdmt/pool.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <string>

#include "mdmt/error.hpp"

namespace mdmt {

namespace {

// Sorted target set followed by the unordered extreme pair.
std::vector<int> class_key(const Sequence& seq) {
  std::vector<int> key = seq.nodes();
  std::sort(key.begin(), key.end());
  const auto [lo, hi] = std::minmax({seq.first(), seq.last()});
  key.push_back(lo);
  key.push_back(hi);
  return key;
}

// Same, but with the extremes kept in order.
std::vector<int> ordered_key(const Sequence& seq) {
  std::vector<int> key = seq.nodes();
  std::sort(key.begin(), key.end());
  key.push_back(seq.first());
  key.push_back(seq.last());
  return key;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : key) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool contains(const Sequence& seq, int target) {
  return std::find(seq.nodes().begin(), seq.nodes().end(), target) !=
         seq.nodes().end();
}

} // namespace

std::size_t SequencePool::KeyHash::operator()(const std::vector<int>& key) const noexcept {
  return VectorHash{}(key);
}

SequencePool::Offer SequencePool::offer(PoolEntry entry) {
  auto key = class_key(entry.sequence);
  const auto it = index_.find(key);
  if (it == index_.end()) {
    const int id = static_cast<int>(entries_.size());
    entries_.push_back(std::move(entry));
    alive_.push_back(1);
    ++live_;
    index_.emplace(std::move(key), id);
    ++stats_.insertions;
    return Offer::Inserted;
  }
  const PoolEntry& incumbent = entries_[it->second];
  switch (dominates(entry.sequence, incumbent.sequence)) {
    case Domination::Equal:
      ++stats_.rejected;
      return Offer::Equal;
    case Domination::None:
      ++stats_.rejected;
      return Offer::Dominated;
    case Domination::Strict:
      break;
  }
  // One class, one representative: the newcomer can only ever evict the
  // single stored member of its class.
  alive_[it->second] = 0;
  const int id = static_cast<int>(entries_.size());
  entries_.push_back(std::move(entry));
  alive_.push_back(1);
  it->second = id;
  ++stats_.insertions;
  ++stats_.evictions;
  stats_.max_evictions_per_insert = std::max<std::size_t>(stats_.max_evictions_per_insert, 1);
  return Offer::Replaced;
}

void SequencePool::compact() {
  std::vector<PoolEntry> kept;
  kept.reserve(live_);
  for (std::size_t id = 0; id < entries_.size(); ++id) {
    if (alive_[id]) {
      kept.push_back(std::move(entries_[id]));
    }
  }
  entries_ = std::move(kept);
  alive_.assign(entries_.size(), 1);
  index_.clear();
  for (std::size_t id = 0; id < entries_.size(); ++id) {
    index_.emplace(class_key(entries_[id].sequence), static_cast<int>(id));
  }
}

std::vector<std::vector<int>> SequencePool::covering() const {
  std::vector<std::vector<int>> out(n_targets_);
  for (std::size_t id = 0; id < entries_.size(); ++id) {
    if (!alive_[id]) {
      continue;
    }
    for (int i : entries_[id].sequence.nodes()) {
      out[i].push_back(static_cast<int>(id));
    }
  }
  return out;
}

std::optional<int> SequencePool::find_class(const Sequence& seq) const {
  const auto it = index_.find(class_key(seq));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<PoolEntry> make_entry(const Instance& instance, Sequence seq) {
  PoolEntry entry;
  for (int u = 0; u < instance.n_vehicles(); ++u) {
    if (is_compatible(instance, seq, u)) {
      entry.vehicles.push_back(u);
      entry.trip_durations.push_back(trip_duration(instance, seq, u));
    }
  }
  if (entry.vehicles.empty()) {
    return std::nullopt;
  }
  entry.sequence = std::move(seq);
  return entry;
}

SequencePool enumerate_all_feasible(const Instance& instance,
                                    std::size_t cap,
                                    std::optional<Clock::time_point> deadline) {
  const int n = instance.n_targets();
  SequencePool pool(n);
  const double max_budget = instance.max_budget();
  // On a Euclidean map an infeasible sequence has no feasible extension
  // (triangle inequality); explicit matrices only allow the weaker
  // duration-based cut.
  const bool metric = !instance.has_explicit_matrix();

  auto check_deadline = [&] {
    if (deadline && Clock::now() > *deadline) {
      throw CapExceeded("sequence enumeration hit the time limit");
    }
  };

  // Best ordering per (target set, first, last), built one length at a time.
  std::vector<Sequence> level;
  for (int i = 0; i < n; ++i) {
    Sequence single(instance, {i});
    if (single.duration() <= max_budget + kTimeEps) {
      level.push_back(std::move(single));
    }
  }

  // Bound on one level's size; a level can legitimately outgrow the pool
  // before domination thins it out.
  const std::size_t level_cap =
    cap > (kUnlimited - 64) / 4 ? kUnlimited : 4 * cap + 64;
  std::size_t work = 0;
  while (!level.empty()) {
    for (const Sequence& seq : level) {
      if (auto entry = make_entry(instance, seq)) {
        pool.offer(std::move(*entry));
        if (pool.size() > cap) {
          throw CapExceeded("full enumeration exceeds the cap of " +
                            std::to_string(cap) + " sequences");
        }
      }
    }

    std::vector<Sequence> next;
    std::unordered_map<std::vector<int>, std::size_t, VectorHash> best;
    for (const Sequence& seq : level) {
      for (int j = 0; j < n; ++j) {
        if ((++work & 0xFFF) == 0) {
          check_deadline();
        }
        if (contains(seq, j)) {
          continue;
        }
        const double duration =
          seq.duration() + instance.travel(seq.last(), j) + instance.service(j);
        if (duration > max_budget + kTimeEps) {
          continue;
        }
        Sequence child = seq.extended(instance, j);
        if (metric && compatible_vehicles(instance, child).empty()) {
          continue;
        }
        auto key = ordered_key(child);
        const auto it = best.find(key);
        if (it == best.end()) {
          best.emplace(std::move(key), next.size());
          next.push_back(std::move(child));
        } else if (child.duration() < next[it->second].duration() - kTimeEps) {
          next[it->second] = std::move(child);
        }
      }
      if (next.size() > level_cap) {
        throw CapExceeded("full enumeration exceeds the cap of " +
                          std::to_string(cap) + " sequences");
      }
    }
    level = std::move(next);
  }

  pool.compact();
  return pool;
}

SequencePool generate_heuristic_pool(const Instance& instance,
                                     int children,
                                     std::size_t max_insertions) {
  const int n = instance.n_targets();
  if (children < 1) {
    throw InputError("child count must be >= 1");
  }
  if (max_insertions < static_cast<std::size_t>(n)) {
    throw InputError("K_max must be at least the number of targets");
  }

  // Nearest-first neighbour lists, ties by lower index.
  std::vector<std::vector<int>> nearest(n);
  for (int i = 0; i < n; ++i) {
    auto& list = nearest[i];
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        list.push_back(j);
      }
    }
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
      return instance.travel(i, a) < instance.travel(i, b);
    });
  }

  SequencePool pool(n);
  // A child that ties with the stored member of its class is not kept, but
  // it is still expanded: its extensions grow from the other extreme, which
  // the stored orientation cannot reach. `id` is the class member the entry
  // belongs to; once that member is evicted the entry is stale.
  struct Pending {
    int id;
    std::optional<Sequence> twin;
  };
  std::deque<Pending> queue;
  const double max_budget = instance.max_budget();

  auto full = [&] { return pool.stats().insertions >= max_insertions; };

  for (int i = 0; i < n && !full(); ++i) {
    if (auto entry = make_entry(instance, Sequence(instance, {i}))) {
      pool.offer(std::move(*entry));
      queue.push_back({static_cast<int>(pool.entries().size()) - 1, std::nullopt});
    }
  }

  bool interrupted = queue.size() < static_cast<std::size_t>(n) && full();
  while (!queue.empty()) {
    if (full()) {
      interrupted = true;
      break;
    }
    Pending pending = std::move(queue.front());
    queue.pop_front();
    if (!pool.alive(pending.id)) {
      continue;
    }
    const Sequence parent = pending.twin ? *pending.twin : pool.entry(pending.id).sequence;
    int generated = 0;
    for (int j : nearest[parent.last()]) {
      if (generated == children) {
        break;
      }
      if (contains(parent, j)) {
        continue;
      }
      if (full()) {
        interrupted = true;
        break;
      }
      ++generated;
      Sequence child = parent.extended(instance, j);
      // Cheap pre-filter on the largest budget, then the per-vehicle check.
      if (child.duration() > max_budget + kTimeEps) {
        continue;
      }
      auto entry = make_entry(instance, child);
      if (!entry) {
        continue;
      }
      switch (pool.offer(std::move(*entry))) {
        case SequencePool::Offer::Inserted:
        case SequencePool::Offer::Replaced:
          queue.push_back({static_cast<int>(pool.entries().size()) - 1, std::nullopt});
          break;
        case SequencePool::Offer::Equal: {
          const int member = *pool.find_class(child);
          if (pool.entry(member).sequence.last() != child.last()) {
            queue.push_back({member, std::move(child)});
          }
          break;
        }
        case SequencePool::Offer::Dominated:
          break;
      }
    }
    if (interrupted) {
      break;
    }
  }

  pool.stats().cap_hit = interrupted;
  pool.compact();
  return pool;
}

void dump_pool(std::ostream& out, const Instance& instance, const SequencePool& pool) {
  const auto& targets = instance.targets();
  const auto& vehicles = instance.vehicles();
  for (std::size_t id = 0; id < pool.entries().size(); ++id) {
    const auto& entry = pool.entries()[id];
    out << id << ';';
    for (int i : entry.sequence.nodes()) {
      out << ' ' << targets[i].id;
    }
    out << "; " << std::to_string(entry.sequence.duration()) << ';';
    for (int u : entry.vehicles) {
      out << ' ' << vehicles[u].id;
    }
    out << '\n';
  }
}

} // namespace mdmt
