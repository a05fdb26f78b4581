#include "bigs/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "bigs/errors.hpp"

namespace bigs {

namespace {

bool insert_sorted(std::vector<NodeIndex>& v, NodeIndex x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) return false;
  v.insert(it, x);
  return true;
}

bool contains_sorted(const std::vector<NodeIndex>& v, NodeIndex x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

int Distance::hops() const {
  if (!is_finite()) throw ArgumentError("infinite distance has no hop count");
  return hops_;
}

int Distance::throw_negative() { throw ArgumentError("negative distance"); }

std::string Distance::to_string() const {
  return is_finite() ? std::to_string(hops_) : std::string("inf");
}

NodeIndex Graph::add_node(std::string_view label) {
  if (label.empty()) throw ArgumentError("empty node label");
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  const NodeIndex i = labels_.size();
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), i);
  out_.emplace_back();
  in_.emplace_back();
  nbr_.emplace_back();
  return i;
}

bool Graph::add_edge(NodeIndex from, NodeIndex to) {
  if (from >= node_count() || to >= node_count())
    throw ArgumentError("edge endpoint out of range");
  if (from == to) throw ArgumentError("self-loop on node '" + labels_[from] + "'");
  if (directed_) {
    if (!insert_sorted(out_[from], to)) return false;
    insert_sorted(in_[to], from);
  } else {
    if (!insert_sorted(out_[from], to)) return false;
    insert_sorted(out_[to], from);
    insert_sorted(in_[from], to);
    insert_sorted(in_[to], from);
  }
  insert_sorted(nbr_[from], to);
  insert_sorted(nbr_[to], from);
  ++edge_count_;
  return true;
}

bool Graph::add_edge(std::string_view from, std::string_view to) {
  const NodeIndex a = add_node(from);
  const NodeIndex b = add_node(to);
  return add_edge(a, b);
}

std::optional<NodeIndex> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw ArgumentError("unknown node '" + std::string(label) + "'");
}

bool Graph::has_edge(NodeIndex from, NodeIndex to) const {
  return contains_sorted(out_.at(from), to);
}

bool Graph::adjacent(NodeIndex a, NodeIndex b) const { return contains_sorted(nbr_.at(a), b); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeIndex i = 0; i < node_count(); ++i)
    for (NodeIndex j : out_[i])
      if (directed_ || i < j) result.emplace_back(i, j);
  return result;
}

Graph make_graph(std::size_t node_count, std::span<const Edge> edges, bool directed) {
  Graph g(directed);
  for (std::size_t i = 0; i < node_count; ++i) g.add_node(std::to_string(i));
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

Graph load_edge_list(std::istream& in, bool directed) {
  Graph g(directed);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
    if (tokens.empty()) continue;
    if (tokens.size() > 2)
      throw ParseError(line_no, "expected one or two node identifiers, got " +
                                    std::to_string(tokens.size()));
    if (tokens.size() == 1) {
      g.add_node(tokens[0]);
      continue;
    }
    if (tokens[0] == tokens[1]) throw ParseError(line_no, "self-loop on node '" + tokens[0] + "'");
    g.add_edge(tokens[0], tokens[1]);
  }
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<bool> touched(g.node_count(), false);
  for (auto [a, b] : g.edges()) touched[a] = touched[b] = true;
  for (NodeIndex i = 0; i < g.node_count(); ++i)
    if (!touched[i]) out << g.label(i) << '\n';
  for (auto [a, b] : g.edges()) out << g.label(a) << ' ' << g.label(b) << '\n';
}

std::vector<Distance> bfs_distances(const Graph& g, std::span<const NodeIndex> sources,
                                    bool follow_direction) {
  std::vector<Distance> dist(g.node_count());
  std::deque<NodeIndex> queue;
  for (NodeIndex s : sources) {
    if (s >= g.node_count()) throw ArgumentError("BFS source out of range");
    if (!dist[s].is_finite()) {
      dist[s] = Distance(0);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    auto next = follow_direction ? g.successors(u) : g.neighbors(u);
    for (NodeIndex v : next) {
      if (dist[v].is_finite()) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

namespace {

GeodesicMatrix all_pairs(const Graph& g, bool follow_direction) {
  GeodesicMatrix m(g.node_count());
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    const NodeIndex src[] = {s};
    auto row = bfs_distances(g, src, follow_direction);
    for (NodeIndex t = 0; t < g.node_count(); ++t) m.set(s, t, row[t]);
  }
  return m;
}

}  // namespace

GeodesicMatrix geodesics(const Graph& g) { return all_pairs(g, true); }

GeodesicMatrix observation_geodesics(const Graph& g) { return all_pairs(g, false); }

std::vector<std::vector<NodeIndex>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeIndex>> components;
  std::vector<bool> seen(g.node_count(), false);
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeIndex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (NodeIndex v : g.neighbors(comp[head]))
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

HypernodeGraph hypernode_transform(const Graph& g, std::span<const NodeIndex> members) {
  if (members.empty()) throw ArgumentError("hypernode needs at least one member");
  std::vector<bool> is_member(g.node_count(), false);
  for (NodeIndex m : members) {
    if (m >= g.node_count()) throw ArgumentError("hypernode member out of range");
    is_member[m] = true;
  }

  std::string label = "h";
  while (g.find(label)) label.insert(0, "_");

  HypernodeGraph result{Graph(g.directed()), 0, {}, std::vector<NodeIndex>(g.node_count())};
  result.hypernode = result.transformed.add_node(label);
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (is_member[i]) {
      result.image[i] = result.hypernode;
      result.members.push_back(i);
    } else {
      result.image[i] = result.transformed.add_node(g.label(i));
    }
  }
  for (auto [a, b] : g.edges()) {
    if (is_member[a] && is_member[b]) continue;
    result.transformed.add_edge(result.image[a], result.image[b]);
  }
  return result;
}

}  // namespace bigs
