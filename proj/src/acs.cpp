#include "bigs/acs.hpp"

#include <algorithm>

#include "bigs/errors.hpp"

namespace bigs {

AcsStructure::AcsStructure(const AcsPopulation& pop)
    : above_(pop.grid.node_count(), false),
      network_(pop.grid.node_count(), -1),
      adjacent_(pop.grid.node_count()) {
  const Graph& g = pop.grid;
  if (pop.y.size() != g.node_count())
    throw ArgumentError("ACS population needs one y-value per grid");
  for (NodeIndex i = 0; i < g.node_count(); ++i) above_[i] = pop.y[i] > pop.threshold;

  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (!above_[s] || network_[s] >= 0) continue;
    const int id = static_cast<int>(networks_.size());
    std::vector<NodeIndex> members{s};
    network_[s] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (NodeIndex v : g.neighbors(members[head]))
        if (above_[v] && network_[v] < 0) {
          network_[v] = id;
          members.push_back(v);
        }
    std::sort(members.begin(), members.end());
    networks_.push_back(std::move(members));
  }

  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (above_[i]) continue;
    for (NodeIndex v : g.neighbors(i))
      if (above_[v]) adjacent_[i].push_back(network_[v]);
    std::sort(adjacent_[i].begin(), adjacent_[i].end());
    adjacent_[i].erase(std::unique(adjacent_[i].begin(), adjacent_[i].end()), adjacent_[i].end());
  }
}

std::vector<NodeIndex> AcsObservation::observed_grids() const {
  std::vector<NodeIndex> result;
  for (NodeIndex i = 0; i < entry.size(); ++i)
    if (observed(i)) result.push_back(i);
  return result;
}

AcsObservation acs_sample(const AcsPopulation& pop, std::span<const NodeIndex> s0) {
  const Graph& g = pop.grid;
  if (pop.y.size() != g.node_count())
    throw ArgumentError("ACS population needs one y-value per grid");
  AcsObservation obs{std::vector<AcsEntry>(g.node_count(), AcsEntry::Unobserved),
                     std::vector<bool>(g.node_count(), false)};
  for (NodeIndex i = 0; i < g.node_count(); ++i) obs.above[i] = pop.y[i] > pop.threshold;

  std::vector<NodeIndex> queue;
  for (NodeIndex i : s0) {
    if (i >= g.node_count()) throw ArgumentError("initial grid out of range");
    if (obs.entry[i] == AcsEntry::Unobserved) queue.push_back(i);
    obs.entry[i] = AcsEntry::Direct;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeIndex u = queue[head];
    if (!obs.above[u]) continue;
    for (NodeIndex v : g.neighbors(u))
      if (obs.entry[v] == AcsEntry::Unobserved) {
        obs.entry[v] = AcsEntry::Adaptive;
        queue.push_back(v);
      }
  }
  return obs;
}

}  // namespace bigs
