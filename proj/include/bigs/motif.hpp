#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bigs/graph.hpp"
#include "bigs/rational.hpp"

namespace bigs {

enum class MotifShape { K1, K2, S2, K3, K4, C4, S3, P3, Component };

/// A pattern on at most four nodes, or whole connected components up to a
/// maximum order. CLI names: k1 k2 s2 k3 k4 c4 s3 p3 component:<max_order>.
class MotifClass {
 public:
  constexpr MotifClass(MotifShape shape = MotifShape::K1, int max_order = 0)
      : shape_(shape), max_order_(shape == MotifShape::Component ? max_order : 0) {}

  static MotifClass parse(std::string_view name);
  static MotifClass component(int max_order) { return {MotifShape::Component, max_order}; }

  MotifShape shape() const noexcept { return shape_; }
  int max_order() const noexcept { return max_order_; }
  /// Node count of the pattern; the maximum order for components.
  int order() const noexcept;
  std::string name() const;

  friend bool operator==(const MotifClass&, const MotifClass&) = default;

 private:
  MotifShape shape_;
  int max_order_;
};

/// The eight fixed patterns in table order: K1 K2 S2 K3 K4 C4 S3 P3.
std::span<const MotifClass> pattern_classes();

struct Motif {
  std::size_t id = 0;
  std::vector<NodeIndex> members;  // sorted
  MotifClass cls;
};

struct MotifSet {
  std::vector<Motif> motifs;
  std::vector<Rational> y;  // one per motif, defaults to 1

  std::size_t size() const noexcept { return motifs.size(); }
  bool empty() const noexcept { return motifs.empty(); }
  Rational total() const;
};

/// Every node subset whose induced subgraph is isomorphic to the class
/// pattern (direction ignored), each listed once, sorted by member list.
/// For components: every connected component with at most max_order nodes.
MotifSet enumerate_motifs(const Graph& g, const MotifClass& cls);

/// Pattern matched by the induced subgraph on `nodes`, if any of the eight.
std::optional<MotifShape> classify_induced(const Graph& g, std::span<const NodeIndex> nodes);

/// lambda_k: largest geodesic between two members; +inf if some pair is
/// unreachable.
Distance motif_diameter(std::span<const NodeIndex> members, const GeodesicMatrix& geo);
inline Distance motif_diameter(const Motif& m, const GeodesicMatrix& geo) {
  return motif_diameter(m.members, geo);
}

/// beta^t(M): nodes outside M whose distance to the nearest member is at
/// most t.
std::vector<NodeIndex> ancestor_neighborhood(std::span<const NodeIndex> members,
                                             const GeodesicMatrix& geo, int t);

/// Snowball observation distances under incident-reciprocal observation.
///
/// A motif counts as observed after T stages when every ordered pair of
/// distinct members has at least one endpoint among the nodes expanded in
/// stages 1..T, and at least one member has been reached. For members that
/// induce a connected subgraph the distances come from closed forms (the
/// farthest-member rule from inside the motif, hypernode merging from
/// outside). Other member sets are resolved by simulating the stages.
///
/// Holds the graph by reference; it must outlive the calculator.
class ObservationDistances {
 public:
  explicit ObservationDistances(const Graph& g);

  const Graph& graph() const noexcept { return *g_; }
  const GeodesicMatrix& geodesics() const noexcept { return geo_; }

  /// d_{i,k} for a seed inside the motif.
  Distance internal(std::span<const NodeIndex> members, NodeIndex seed) const;
  /// d_{i,k} for a seed outside the motif.
  Distance external(std::span<const NodeIndex> members, NodeIndex seed) const;
  Distance operator()(std::span<const NodeIndex> members, NodeIndex seed) const;
  /// phi_k: largest internal distance over the members.
  Distance diameter(std::span<const NodeIndex> members) const;

  /// Stage-by-stage simulation from a single seed.
  Distance simulate(std::span<const NodeIndex> members, NodeIndex seed) const;

 private:
  bool induces_connected(std::span<const NodeIndex> members) const;

  const Graph* g_;
  GeodesicMatrix geo_;
};

Distance observation_distance_internal(const Motif& m, NodeIndex seed, const Graph& g);
Distance observation_distance_external(const Motif& m, NodeIndex seed, const Graph& g);
Distance observation_diameter(const Motif& m, const Graph& g);

/// Internal observation distance from the seed's distances to every member
/// (the seed itself included, at distance 0). Valid when the members induce
/// a connected subgraph, or when at most one member is unreachable.
Distance farthest_member_rule(std::span<const Distance> member_distances);

}  // namespace bigs
