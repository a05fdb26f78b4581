#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bigs/graph.hpp"
#include "bigs/rational.hpp"

namespace bigs {

/// Grid population for adaptive cluster sampling. `grid` is the contiguity
/// graph; a grid is above threshold when y > threshold.
struct AcsPopulation {
  Graph grid;
  std::vector<Rational> y;
  Rational threshold;
};

/// Networks and edge grids of an ACS population.
///
/// A network is a connected set of above-threshold grids (maximal). An edge
/// grid is a below-threshold grid contiguous to at least one network.
class AcsStructure {
 public:
  explicit AcsStructure(const AcsPopulation& pop);

  std::size_t size() const noexcept { return above_.size(); }
  bool above(NodeIndex i) const { return above_.at(i); }
  /// Network id of an above-threshold grid, -1 otherwise.
  int network_of(NodeIndex i) const { return network_.at(i); }
  const std::vector<std::vector<NodeIndex>>& networks() const noexcept { return networks_; }
  /// Networks contiguous to a below-threshold grid (empty for network grids).
  const std::vector<int>& adjacent_networks(NodeIndex i) const { return adjacent_.at(i); }
  bool is_edge_grid(NodeIndex i) const { return !above_.at(i) && !adjacent_.at(i).empty(); }

 private:
  std::vector<bool> above_;
  std::vector<int> network_;
  std::vector<std::vector<NodeIndex>> networks_;
  std::vector<std::vector<int>> adjacent_;
};

enum class AcsEntry {
  Unobserved,
  Direct,    // selected in s0
  Adaptive,  // reached by expanding an above-threshold grid
};

struct AcsObservation {
  std::vector<AcsEntry> entry;  // per grid
  std::vector<bool> above;      // per grid, copied from the population

  bool observed(NodeIndex i) const { return entry.at(i) != AcsEntry::Unobserved; }
  /// Observed grids, ascending.
  std::vector<NodeIndex> observed_grids() const;
};

/// Start from s0 and survey every neighbour of each observed above-threshold
/// grid until no new grid is added. The result does not depend on the order
/// of expansion.
AcsObservation acs_sample(const AcsPopulation& pop, std::span<const NodeIndex> s0);

}  // namespace bigs
