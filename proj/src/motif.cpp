#include "bigs/motif.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "bigs/errors.hpp"
#include "bigs/sampling.hpp"

namespace bigs {

namespace {

constexpr std::array<MotifClass, 8> kPatterns = {
    MotifClass(MotifShape::K1), MotifClass(MotifShape::K2), MotifClass(MotifShape::S2),
    MotifClass(MotifShape::K3), MotifClass(MotifShape::K4), MotifClass(MotifShape::C4),
    MotifClass(MotifShape::S3), MotifClass(MotifShape::P3)};

struct ShapeName {
  MotifShape shape;
  const char* name;
  int order;
};

constexpr std::array<ShapeName, 8> kShapeNames = {{{MotifShape::K1, "k1", 1},
                                                   {MotifShape::K2, "k2", 2},
                                                   {MotifShape::S2, "s2", 3},
                                                   {MotifShape::K3, "k3", 3},
                                                   {MotifShape::K4, "k4", 4},
                                                   {MotifShape::C4, "c4", 4},
                                                   {MotifShape::S3, "s3", 4},
                                                   {MotifShape::P3, "p3", 4}}};

// ESU: every connected node set of size k is produced exactly once, rooted at
// its smallest node.
template <typename Emit>
void extend_subgraph(const Graph& g, std::vector<NodeIndex>& sub, std::vector<NodeIndex> ext,
                     NodeIndex root, std::size_t k, Emit& emit) {
  if (sub.size() == k) {
    emit(sub);
    return;
  }
  while (!ext.empty()) {
    const NodeIndex w = ext.back();
    ext.pop_back();
    std::vector<NodeIndex> next = ext;
    for (NodeIndex u : g.neighbors(w)) {
      if (u <= root || u == w) continue;
      if (std::find(sub.begin(), sub.end(), u) != sub.end()) continue;
      if (std::find(next.begin(), next.end(), u) != next.end()) continue;
      bool exclusive = true;
      for (NodeIndex s : sub)
        if (g.adjacent(s, u)) {
          exclusive = false;
          break;
        }
      if (exclusive) next.push_back(u);
    }
    sub.push_back(w);
    extend_subgraph(g, sub, std::move(next), root, k, emit);
    sub.pop_back();
  }
}

}  // namespace

MotifClass MotifClass::parse(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& entry : kShapeNames)
    if (lower == entry.name) return MotifClass(entry.shape);
  constexpr std::string_view prefix = "component:";
  if (lower.starts_with(prefix)) {
    std::string_view digits = std::string_view(lower).substr(prefix.size());
    int order = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && order >= 1)
      return component(order);
  }
  throw ArgumentError("unknown motif class '" + std::string(name) +
                      "' (expected k1 k2 s2 k3 k4 c4 s3 p3 or component:<max_order>)");
}

int MotifClass::order() const noexcept {
  if (shape_ == MotifShape::Component) return max_order_;
  for (const auto& entry : kShapeNames)
    if (entry.shape == shape_) return entry.order;
  return 0;
}

std::string MotifClass::name() const {
  if (shape_ == MotifShape::Component) return "component:" + std::to_string(max_order_);
  for (const auto& entry : kShapeNames)
    if (entry.shape == shape_) return entry.name;
  return "?";
}

std::span<const MotifClass> pattern_classes() { return kPatterns; }

Rational MotifSet::total() const {
  Rational sum = 0;
  for (const auto& v : y) sum += v;
  return sum;
}

std::optional<MotifShape> classify_induced(const Graph& g, std::span<const NodeIndex> nodes) {
  const std::size_t k = nodes.size();
  if (k == 0 || k > 4) return std::nullopt;
  std::array<int, 4> degree{};
  int edges = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (g.adjacent(nodes[a], nodes[b])) {
        ++edges;
        ++degree[a];
        ++degree[b];
      }
  std::sort(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(k));
  switch (k) {
    case 1:
      return MotifShape::K1;
    case 2:
      if (edges == 1) return MotifShape::K2;
      break;
    case 3:
      if (edges == 2) return MotifShape::S2;
      if (edges == 3) return MotifShape::K3;
      break;
    case 4:
      if (edges == 3 && degree[0] == 1 && degree[3] == 3) return MotifShape::S3;
      if (edges == 3 && degree[0] == 1 && degree[3] == 2) return MotifShape::P3;
      if (edges == 4 && degree[0] == 2 && degree[3] == 2) return MotifShape::C4;
      if (edges == 6) return MotifShape::K4;
      break;
    default:
      break;
  }
  return std::nullopt;
}

MotifSet enumerate_motifs(const Graph& g, const MotifClass& cls) {
  std::vector<std::vector<NodeIndex>> found;
  if (cls.shape() == MotifShape::Component) {
    if (cls.max_order() < 1) throw ArgumentError("component motif needs max_order >= 1");
    for (auto& comp : connected_components(g))
      if (comp.size() <= static_cast<std::size_t>(cls.max_order())) found.push_back(std::move(comp));
  } else {
    const auto k = static_cast<std::size_t>(cls.order());
    auto emit = [&](const std::vector<NodeIndex>& sub) {
      if (classify_induced(g, sub) == cls.shape()) {
        auto members = sub;
        std::sort(members.begin(), members.end());
        found.push_back(std::move(members));
      }
    };
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      std::vector<NodeIndex> sub{v};
      std::vector<NodeIndex> ext;
      for (NodeIndex u : g.neighbors(v))
        if (u > v) ext.push_back(u);
      extend_subgraph(g, sub, std::move(ext), v, k, emit);
    }
  }
  std::sort(found.begin(), found.end());

  MotifSet set;
  set.motifs.reserve(found.size());
  for (std::size_t id = 0; id < found.size(); ++id)
    set.motifs.push_back(Motif{id, std::move(found[id]), cls});
  set.y.assign(set.motifs.size(), Rational(1));
  return set;
}

Distance motif_diameter(std::span<const NodeIndex> members, const GeodesicMatrix& geo) {
  Distance widest(0);
  for (NodeIndex a : members)
    for (NodeIndex b : members)
      if (a != b) widest = std::max(widest, geo(a, b));
  return widest;
}

std::vector<NodeIndex> ancestor_neighborhood(std::span<const NodeIndex> members,
                                             const GeodesicMatrix& geo, int t) {
  if (t < 1) throw ArgumentError("ancestor neighbourhood radius must be >= 1");
  std::vector<bool> is_member(geo.size(), false);
  for (NodeIndex m : members) is_member.at(m) = true;
  std::vector<NodeIndex> result;
  for (NodeIndex i = 0; i < geo.size(); ++i) {
    if (is_member[i]) continue;
    for (NodeIndex m : members)
      if (geo(i, m) <= Distance(t)) {
        result.push_back(i);
        break;
      }
  }
  return result;
}

Distance farthest_member_rule(std::span<const Distance> member_distances) {
  int unreachable = 0;
  Distance farthest(0);
  int at_farthest = 0;
  for (Distance d : member_distances) {
    if (!d.is_finite()) {
      ++unreachable;
      continue;
    }
    if (d > farthest) {
      farthest = d;
      at_farthest = 1;
    } else if (d == farthest) {
      ++at_farthest;
    }
  }
  if (unreachable >= 2) return Distance::infinite();
  if (unreachable == 1) return farthest + 1;
  return at_farthest == 1 ? farthest : farthest + 1;
}

ObservationDistances::ObservationDistances(const Graph& g)
    : g_(&g), geo_(observation_geodesics(g)) {}

bool ObservationDistances::induces_connected(std::span<const NodeIndex> members) const {
  if (members.size() <= 1) return true;
  std::vector<NodeIndex> reached{members.front()};
  for (std::size_t head = 0; head < reached.size(); ++head)
    for (NodeIndex m : members)
      if (std::find(reached.begin(), reached.end(), m) == reached.end() &&
          g_->adjacent(reached[head], m))
        reached.push_back(m);
  return reached.size() == members.size();
}

Distance ObservationDistances::internal(std::span<const NodeIndex> members, NodeIndex seed) const {
  if (std::find(members.begin(), members.end(), seed) == members.end())
    throw ArgumentError("seed is not a member of the motif");
  if (!induces_connected(members)) return simulate(members, seed);
  std::vector<Distance> dist;
  dist.reserve(members.size());
  for (NodeIndex m : members) dist.push_back(geo_(seed, m));
  return farthest_member_rule(dist);
}

// Members within distance h of the seed are all reached by stage h; from then
// on the stages behave like snowball sampling from those members merged into
// one node. The best h gives the distance.
Distance ObservationDistances::external(std::span<const NodeIndex> members, NodeIndex seed) const {
  if (std::find(members.begin(), members.end(), seed) != members.end())
    throw ArgumentError("seed is a member of the motif");
  if (members.empty()) throw ArgumentError("empty motif");
  if (!induces_connected(members)) return simulate(members, seed);

  std::vector<Distance> levels;
  for (NodeIndex m : members)
    if (geo_(seed, m).is_finite()) levels.push_back(geo_(seed, m));
  if (levels.empty()) return Distance::infinite();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Distance best = Distance::infinite();
  for (Distance h : levels) {
    std::vector<NodeIndex> merged;
    for (NodeIndex m : members)
      if (geo_(seed, m) <= h) merged.push_back(m);
    const HypernodeGraph hg = hypernode_transform(*g_, merged);
    const NodeIndex src[] = {hg.hypernode};
    const auto from_hypernode = bfs_distances(hg.transformed, src, false);

    std::vector<Distance> dist{Distance(0)};
    for (NodeIndex m : members)
      if (geo_(seed, m) > h) dist.push_back(from_hypernode[hg.image[m]]);
    Distance stages = farthest_member_rule(dist);
    // Pairs inside the hypernode still need one expansion.
    if (merged.size() >= 2) stages = std::max(stages, Distance(1));
    best = std::min(best, stages + h.hops());
  }
  return best;
}

Distance ObservationDistances::operator()(std::span<const NodeIndex> members,
                                          NodeIndex seed) const {
  const bool inside = std::find(members.begin(), members.end(), seed) != members.end();
  return inside ? internal(members, seed) : external(members, seed);
}

Distance ObservationDistances::diameter(std::span<const NodeIndex> members) const {
  Distance widest(0);
  for (NodeIndex m : members) widest = std::max(widest, internal(members, m));
  return widest;
}

Distance ObservationDistances::simulate(std::span<const NodeIndex> members, NodeIndex seed) const {
  const NodeIndex seeds[] = {seed};
  const auto reach = bfs_distances(*g_, seeds, false);
  int horizon = 0;
  for (Distance d : reach)
    if (d.is_finite()) horizon = std::max(horizon, d.hops());
  // Beyond horizon + 1 stages the reference set no longer grows.
  for (int stages = 0; stages <= horizon + 1; ++stages)
    if (snowball_sample(*g_, seeds, stages).observes(members)) return Distance(stages);
  return Distance::infinite();
}

Distance observation_distance_internal(const Motif& m, NodeIndex seed, const Graph& g) {
  return ObservationDistances(g).internal(m.members, seed);
}

Distance observation_distance_external(const Motif& m, NodeIndex seed, const Graph& g) {
  return ObservationDistances(g).external(m.members, seed);
}

Distance observation_diameter(const Motif& m, const Graph& g) {
  return ObservationDistances(g).diameter(m.members);
}

}  // namespace bigs
