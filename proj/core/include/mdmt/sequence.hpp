#pragma once

#include <span>
#include <vector>

#include "mdmt/instance.hpp"

namespace mdmt {

// An open, depot-free ordered list of target indices with its cached
// duration (travel between consecutive targets plus all service times).
class Sequence {
public:
  Sequence() = default;

  // Validates the node list (nonempty, known, duplicate-free) and computes
  // the duration. Throws InputError otherwise.
  Sequence(const Instance& instance, std::vector<int> nodes);

  const std::vector<int>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double duration() const { return duration_; }
  int first() const { return nodes_.front(); }
  int last() const { return nodes_.back(); }

  // Sum of service times; duration() minus this is pure travel.
  double service() const { return service_; }

  // Appends a target not yet in the sequence. Unchecked.
  Sequence extended(const Instance& instance, int target) const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.nodes_ == b.nodes_;
  }

private:
  std::vector<int> nodes_;
  double duration_ = 0.0;
  double service_ = 0.0;
};

// Duration of an ordered, duplicate-free list of target indices.
double sequence_duration(const Instance& instance, std::span<const int> nodes);

// Duration of the trip that flies `seq` out of and back into the home depot
// of vehicle `vehicle`.
double trip_duration(const Instance& instance, const Sequence& seq, int vehicle);

// Vehicle can fly the whole trip on one battery and the territory (if any)
// allows it to serve every target of the sequence.
bool is_compatible(const Instance& instance, const Sequence& seq, int vehicle);

// Vehicles compatible with `seq`, in index order.
std::vector<int> compatible_vehicles(const Instance& instance, const Sequence& seq);

enum class Domination { Strict, Equal, None };

// How `a` relates to `b`: Strict when both cover the same target set with
// the same unordered extreme pair and `a` is strictly shorter; Equal on
// equal durations; None otherwise (including when `b` is shorter).
Domination dominates(const Sequence& a, const Sequence& b);

} // namespace mdmt
