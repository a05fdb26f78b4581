#include "bigs/sampling.hpp"

#include <algorithm>

#include "bigs/errors.hpp"

namespace bigs {

SampleGraph::SampleGraph(std::size_t population_size, Reference kind)
    : kind_(kind), in_reference_set_(population_size, false), wave_(population_size, -1) {}

bool SampleGraph::in_reference(NodeIndex a, NodeIndex b) const {
  if (kind_ == Reference::Incident) return in_reference_set_.at(a) || in_reference_set_.at(b);
  return in_reference_set_.at(a) && in_reference_set_.at(b);
}

bool SampleGraph::observes(std::span<const NodeIndex> members) const {
  bool touched = false;
  for (NodeIndex a : members) {
    touched = touched || contains(a);
    for (NodeIndex b : members)
      if (a != b && !in_reference(a, b)) return false;
  }
  return touched;
}

SampleGraph snowball_sample(const Graph& g, std::span<const NodeIndex> seeds, int stages) {
  if (stages < 0) throw ArgumentError("stage count must be non-negative");
  SampleGraph s(g.node_count(), SampleGraph::Reference::Incident);

  std::vector<NodeIndex> frontier;
  for (NodeIndex i : seeds) {
    if (i >= g.node_count()) throw ArgumentError("seed out of range");
    if (s.wave_[i] < 0) {
      s.wave_[i] = 0;
      frontier.push_back(i);
    }
  }
  for (int stage = 1; stage <= stages && !frontier.empty(); ++stage) {
    std::vector<NodeIndex> next;
    for (NodeIndex u : frontier) {
      s.in_reference_set_[u] = true;
      s.reference_nodes_.push_back(u);
    }
    for (NodeIndex u : frontier)
      for (NodeIndex v : g.neighbors(u))
        if (s.wave_[v] < 0) {
          s.wave_[v] = stage;
          next.push_back(v);
        }
    frontier = std::move(next);
  }

  for (NodeIndex i = 0; i < g.node_count(); ++i)
    if (s.wave_[i] >= 0) s.nodes_.push_back(i);
  std::sort(s.reference_nodes_.begin(), s.reference_nodes_.end());
  for (auto [a, b] : g.edges())
    if (s.in_reference_set_[a] || s.in_reference_set_[b]) s.edges_.emplace_back(a, b);
  return s;
}

SampleGraph induced_sample(const Graph& g, std::span<const NodeIndex> nodes) {
  SampleGraph s(g.node_count(), SampleGraph::Reference::Induced);
  for (NodeIndex i : nodes) {
    if (i >= g.node_count()) throw ArgumentError("sample node out of range");
    if (!s.in_reference_set_[i]) {
      s.in_reference_set_[i] = true;
      s.wave_[i] = 0;
    }
  }
  for (NodeIndex i = 0; i < g.node_count(); ++i)
    if (s.in_reference_set_[i]) {
      s.nodes_.push_back(i);
      s.reference_nodes_.push_back(i);
    }
  for (auto [a, b] : g.edges())
    if (s.in_reference_set_[a] && s.in_reference_set_[b]) s.edges_.emplace_back(a, b);
  return s;
}

}  // namespace bigs
