#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bigs {

using NodeIndex = std::size_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

/// Geodesic length in hops, or +inf for unreachable pairs. Infinity is a
/// distinct state, it compares greater than every finite distance.
class Distance {
 public:
  constexpr Distance() noexcept = default;  // +inf
  constexpr explicit Distance(int hops) : hops_(hops < 0 ? throw_negative() : hops) {}

  static constexpr Distance infinite() noexcept { return Distance(); }

  constexpr bool is_finite() const noexcept { return hops_ >= 0; }
  int hops() const;

  friend constexpr bool operator==(Distance, Distance) noexcept = default;
  friend constexpr std::strong_ordering operator<=>(Distance a, Distance b) noexcept {
    if (a.is_finite() != b.is_finite())
      return a.is_finite() ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.hops_ <=> b.hops_;
  }
  /// inf + k stays inf.
  friend constexpr Distance operator+(Distance d, int k) {
    return d.is_finite() ? Distance(d.hops_ + k) : d;
  }

  std::string to_string() const;

 private:
  static int throw_negative();
  int hops_ = -1;
};

/// Simple graph over string-labelled nodes. Labels map to dense indices in
/// insertion order. Undirected graphs store each edge once.
class Graph {
 public:
  explicit Graph(bool directed = false) : directed_(directed) {}

  /// Returns the existing index when the label is already present.
  NodeIndex add_node(std::string_view label);
  /// Returns false when the edge already exists. Throws on self-loops.
  bool add_edge(NodeIndex from, NodeIndex to);
  bool add_edge(std::string_view from, std::string_view to);

  bool directed() const noexcept { return directed_; }
  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::optional<NodeIndex> find(std::string_view label) const;
  NodeIndex index_of(std::string_view label) const;

  /// a_ij: edge from i to j (either orientation for undirected graphs).
  bool has_edge(NodeIndex from, NodeIndex to) const;
  /// Edge in either direction.
  bool adjacent(NodeIndex a, NodeIndex b) const;

  std::span<const NodeIndex> successors(NodeIndex i) const { return out_.at(i); }
  std::span<const NodeIndex> predecessors(NodeIndex i) const { return in_.at(i); }
  /// Union of successors and predecessors, sorted.
  std::span<const NodeIndex> neighbors(NodeIndex i) const { return nbr_.at(i); }

  /// Undirected edges are reported once with first < second.
  std::vector<Edge> edges() const;

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::vector<NodeIndex>> in_;
  std::vector<std::vector<NodeIndex>> nbr_;
  std::size_t edge_count_ = 0;
};

/// Graph with nodes labelled "0".."n-1".
Graph make_graph(std::size_t node_count, std::span<const Edge> edges, bool directed = false);

/// Edge-list text: "u v" per line, a single token declares an isolated
/// node, '#' starts a comment. Throws ParseError with the line number.
Graph load_edge_list(std::istream& in, bool directed = false);
void write_edge_list(std::ostream& out, const Graph& g);

class GeodesicMatrix {
 public:
  explicit GeodesicMatrix(std::size_t n) : n_(n), dist_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Distance operator()(NodeIndex from, NodeIndex to) const { return dist_[from * n_ + to]; }
  std::span<const Distance> row(NodeIndex from) const {
    return std::span<const Distance>(dist_).subspan(from * n_, n_);
  }
  void set(NodeIndex from, NodeIndex to, Distance d) { dist_[from * n_ + to] = d; }

 private:
  std::size_t n_;
  std::vector<Distance> dist_;
};

/// Multi-source BFS. With follow_direction=false edges are traversed both
/// ways, which is the reach of incident-reciprocal snowball observation.
std::vector<Distance> bfs_distances(const Graph& g, std::span<const NodeIndex> sources,
                                    bool follow_direction = true);

/// All-pairs shortest paths along edge direction.
GeodesicMatrix geodesics(const Graph& g);
/// All-pairs shortest paths ignoring direction. Equals geodesics() for
/// undirected graphs.
GeodesicMatrix observation_geodesics(const Graph& g);

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<NodeIndex>> connected_components(const Graph& g);

struct HypernodeGraph {
  Graph transformed;
  NodeIndex hypernode = 0;
  std::vector<NodeIndex> members;  // in the base graph, sorted
  std::vector<NodeIndex> image;    // base index -> transformed index
};

/// Merges `members` into one node: internal edges are dropped, edges among
/// the other nodes are kept, and each outside node keeps at most one edge
/// to (and one from) the hypernode.
HypernodeGraph hypernode_transform(const Graph& g, std::span<const NodeIndex> members);

}  // namespace bigs
