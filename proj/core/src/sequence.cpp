#include "mdmt/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdmt/error.hpp"

namespace mdmt {

double sequence_duration(const Instance& instance, std::span<const int> nodes) {
  if (nodes.empty()) {
    throw InputError("sequence must not be empty");
  }
  std::vector<char> seen(instance.n_targets(), 0);
  double total = 0.0;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const int i = nodes[p];
    if (i < 0 || i >= instance.n_targets()) {
      throw InputError("sequence references unknown target index " +
                       std::to_string(i));
    }
    if (seen[i]) {
      throw InputError("sequence visits target index " + std::to_string(i) +
                       " twice");
    }
    seen[i] = 1;
    total += instance.service(i);
    if (p > 0) {
      total += instance.travel(nodes[p - 1], i);
    }
  }
  return total;
}

Sequence::Sequence(const Instance& instance, std::vector<int> nodes)
  : nodes_(std::move(nodes)) {
  duration_ = sequence_duration(instance, nodes_);
  for (int i : nodes_) {
    service_ += instance.service(i);
  }
}

Sequence Sequence::extended(const Instance& instance, int target) const {
  Sequence out = *this;
  out.duration_ += instance.travel(last(), target) + instance.service(target);
  out.service_ += instance.service(target);
  out.nodes_.push_back(target);
  return out;
}

double trip_duration(const Instance& instance, const Sequence& seq, int vehicle) {
  if (vehicle < 0 || vehicle >= instance.n_vehicles()) {
    throw InputError("unknown vehicle index " + std::to_string(vehicle));
  }
  const int home = instance.home_node(vehicle);
  return instance.travel(home, seq.first()) + seq.duration() +
         instance.travel(seq.last(), home);
}

bool is_compatible(const Instance& instance, const Sequence& seq, int vehicle) {
  if (trip_duration(instance, seq, vehicle) > instance.budget(vehicle) + kTimeEps) {
    return false;
  }
  if (instance.restricted()) {
    return std::all_of(seq.nodes().begin(), seq.nodes().end(),
                       [&](int i) { return instance.allows(i, vehicle); });
  }
  return true;
}

std::vector<int> compatible_vehicles(const Instance& instance, const Sequence& seq) {
  std::vector<int> out;
  for (int u = 0; u < instance.n_vehicles(); ++u) {
    if (is_compatible(instance, seq, u)) {
      out.push_back(u);
    }
  }
  return out;
}

Domination dominates(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) {
    return Domination::None;
  }
  const std::pair<int, int> pair_a = std::minmax({a.first(), a.last()});
  const std::pair<int, int> pair_b = std::minmax({b.first(), b.last()});
  if (pair_a != pair_b) {
    return Domination::None;
  }
  std::vector<int> set_a = a.nodes();
  std::vector<int> set_b = b.nodes();
  std::sort(set_a.begin(), set_a.end());
  std::sort(set_b.begin(), set_b.end());
  if (set_a != set_b) {
    return Domination::None;
  }
  if (std::abs(a.duration() - b.duration()) <= kTimeEps) {
    return Domination::Equal;
  }
  return a.duration() < b.duration() ? Domination::Strict : Domination::None;
}

} // namespace mdmt
