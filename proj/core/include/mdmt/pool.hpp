#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mdmt/instance.hpp"
#include "mdmt/sequence.hpp"

namespace mdmt {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

using Clock = std::chrono::steady_clock;

// A candidate sequence together with the vehicles that can fly it and the
// matching trip durations (same order as `vehicles`).
struct PoolEntry {
  Sequence sequence;
  std::vector<int> vehicles;
  std::vector<double> trip_durations;
};

struct PoolStats {
  std::size_t insertions = 0; // every accepted insertion, including replacements
  std::size_t evictions = 0;
  std::size_t rejected = 0; // dominated or equal newcomers
  std::size_t max_evictions_per_insert = 0;
  bool cap_hit = false;
};

// Domination-aware set of feasible sequences. At most one sequence is kept
// per (target set, unordered extreme pair); the shortest wins and on ties
// the incumbent stays.
class SequencePool {
public:
  enum class Offer { Inserted, Replaced, Dominated, Equal };

  SequencePool() = default;
  explicit SequencePool(int n_targets) : n_targets_(n_targets) {}

  // The caller guarantees `entry.vehicles` is nonempty and matches the
  // instance. Replaced means the newcomer evicted a strictly dominated entry.
  Offer offer(PoolEntry entry);

  // Removes evicted slots and renumbers ids densely, preserving order.
  void compact();

  int n_targets() const { return n_targets_; }
  std::size_t size() const { return live_; }
  bool alive(int id) const { return alive_[id] != 0; }

  // Only meaningful on a compacted pool: ids are [0, size()).
  const std::vector<PoolEntry>& entries() const { return entries_; }
  const PoolEntry& entry(int id) const { return entries_[id]; }
  std::vector<std::vector<int>> covering() const;

  // Id of the stored representative of this sequence's class, if any.
  std::optional<int> find_class(const Sequence& seq) const;

  const PoolStats& stats() const { return stats_; }
  PoolStats& stats() { return stats_; }

private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept;
  };

  int n_targets_ = 0;
  std::vector<PoolEntry> entries_;
  std::vector<char> alive_;
  std::size_t live_ = 0;
  std::unordered_map<std::vector<int>, int, KeyHash> index_;
  PoolStats stats_;
};

// Builds the pool entry for `seq`, or nullopt when no vehicle can fly it.
std::optional<PoolEntry> make_entry(const Instance& instance, Sequence seq);

// Every feasible sequence, one per domination class. Throws CapExceeded when
// more than `cap` sequences would be stored or when `deadline` passes.
SequencePool enumerate_all_feasible(const Instance& instance,
                                    std::size_t cap,
                                    std::optional<Clock::time_point> deadline = {});

// Bounded child expansion: singletons first, then FIFO expansion of each
// stored sequence by its `children` nearest unvisited targets, until the
// queue drains or `max_insertions` sequences have been added.
SequencePool generate_heuristic_pool(const Instance& instance,
                                     int children,
                                     std::size_t max_insertions);

// "id; target ids; duration; vehicle ids", one line per sequence.
void dump_pool(std::ostream& out, const Instance& instance, const SequencePool& pool);

} // namespace mdmt
