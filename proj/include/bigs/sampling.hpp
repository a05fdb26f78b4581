#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bigs/graph.hpp"

namespace bigs {

/// Sample graph G_s = (U_s, A_s) with its reference set s_ref.
///
/// Incident observation: s_ref = R x U  u  U x R where R holds the nodes
/// expanded so far. Induced observation: s_ref = s x s.
class SampleGraph {
 public:
  enum class Reference { Incident, Induced };

  SampleGraph(std::size_t population_size, Reference kind);

  Reference reference_kind() const noexcept { return kind_; }
  /// U_s, sorted.
  const std::vector<NodeIndex>& nodes() const noexcept { return nodes_; }
  /// A_s, in population orientation.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// R for incident observation, s for induced observation.
  const std::vector<NodeIndex>& reference_nodes() const noexcept { return reference_nodes_; }
  /// Stage at which each population node entered U_s, -1 if never.
  const std::vector<int>& waves() const noexcept { return wave_; }

  bool contains(NodeIndex i) const { return wave_.at(i) >= 0; }
  /// (a, b) in s_ref.
  bool in_reference(NodeIndex a, NodeIndex b) const;
  /// The motif on `members` is observed: every ordered pair of distinct
  /// members lies in s_ref and some member lies in U_s.
  bool observes(std::span<const NodeIndex> members) const;

 private:
  friend SampleGraph snowball_sample(const Graph&, std::span<const NodeIndex>, int);
  friend SampleGraph induced_sample(const Graph&, std::span<const NodeIndex>);

  Reference kind_;
  std::vector<NodeIndex> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeIndex> reference_nodes_;
  std::vector<bool> in_reference_set_;
  std::vector<int> wave_;
};

/// T-stage snowball sampling with incident-reciprocal observation: each
/// stage expands the current frontier, observing every edge incident to it
/// in either direction; newly reached nodes form the next frontier.
SampleGraph snowball_sample(const Graph& g, std::span<const NodeIndex> seeds, int stages);

/// Induced observation: only edges with both endpoints in s are observed.
SampleGraph induced_sample(const Graph& g, std::span<const NodeIndex> s);

}  // namespace bigs
