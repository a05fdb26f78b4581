#include <doctest.h>

#include <random>
#include <sstream>

#include "bigs/errors.hpp"
#include "bigs/graph.hpp"
#include "oracles.hpp"

using namespace bigs;

namespace {

Graph parse(const std::string& text, bool directed = false) {
  std::istringstream in(text);
  return load_edge_list(in, directed);
}

Distance at(const GeodesicMatrix& m, const Graph& g, const char* a, const char* b) {
  return m(g.index_of(a), g.index_of(b));
}

}  // namespace

TEST_CASE("edge list loading") {
  SUBCASE("two edges") {
    const Graph g = parse("1 2\n2 3");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(g.index_of("1"), g.index_of("2")));
    CHECK(g.adjacent(g.index_of("3"), g.index_of("2")));
    CHECK_FALSE(g.adjacent(g.index_of("1"), g.index_of("3")));
  }
  SUBCASE("isolated node declaration") {
    const Graph g = parse("5");
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(g.label(0) == "5");
  }
  SUBCASE("comments, blank lines and duplicates") {
    const Graph g = parse("# header\n\nA B  # trailing\nB A\nC\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 1);
  }
  SUBCASE("self-loop is rejected with its line") {
    try {
      parse("1 2\n1 1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("three tokens") { CHECK_THROWS_AS(parse("1 2 3"), ParseError); }
  SUBCASE("directed edges keep their orientation") {
    const Graph g = parse("a b\nb a\nb c", true);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(g.index_of("b"), g.index_of("c")));
    CHECK_FALSE(g.has_edge(g.index_of("c"), g.index_of("b")));
    CHECK(g.adjacent(g.index_of("c"), g.index_of("b")));
  }
}

TEST_CASE("edge list round trip") {
  const Graph g = parse("x y\ny z\nlonely\n");
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  const Graph h = load_edge_list(in);
  CHECK(h.node_count() == 4);
  CHECK(h.edge_count() == 2);
  CHECK(h.find("lonely"));
}

TEST_CASE("graph invariants") {
  Graph g;
  g.add_node("a");
  g.add_node("b");
  CHECK(g.add_node("a") == 0);
  CHECK(g.add_edge(0, 1));
  CHECK_FALSE(g.add_edge(1, 0));
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(g.add_edge(0, 0), ArgumentError);
  CHECK_THROWS_AS(g.add_edge(0, 7), ArgumentError);
  CHECK_THROWS_AS(g.index_of("zz"), ArgumentError);
}

TEST_CASE("distance sentinel") {
  const Distance inf;
  CHECK_FALSE(inf.is_finite());
  CHECK(Distance(1000000) < inf);
  CHECK(inf + 3 == inf);
  CHECK(Distance(2) + 1 == Distance(3));
  CHECK(inf.to_string() == "inf");
  CHECK_THROWS_AS(inf.hops(), ArgumentError);
  CHECK_THROWS_AS(Distance(-1), ArgumentError);
}

TEST_CASE("geodesics") {
  SUBCASE("path") {
    const Graph g = parse("1 2\n2 3");
    const auto m = geodesics(g);
    CHECK(at(m, g, "1", "3") == Distance(2));
    CHECK(at(m, g, "2", "2") == Distance(0));
  }
  SUBCASE("unreachable pairs are infinite") {
    const Graph g = parse("1\n2 3");
    const auto m = geodesics(g);
    CHECK(at(m, g, "2", "3") == Distance(1));
    CHECK(at(m, g, "1", "2") == Distance::infinite());
    CHECK(at(m, g, "1", "3") == Distance::infinite());
  }
  SUBCASE("complete graph") {
    const Graph g = parse("1 2\n1 3\n1 4\n2 3\n2 4\n3 4");
    const auto m = geodesics(g);
    for (NodeIndex i = 0; i < 4; ++i)
      for (NodeIndex j = 0; j < 4; ++j) CHECK(m(i, j) == Distance(i == j ? 0 : 1));
  }
  SUBCASE("directed geodesics follow edges, observation geodesics do not") {
    const Graph g = parse("a b\nb c", true);
    CHECK(at(geodesics(g), g, "c", "a") == Distance::infinite());
    CHECK(at(observation_geodesics(g), g, "c", "a") == Distance(2));
  }
}

TEST_CASE("geodesics agree with the simple-path oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const bool directed = trial % 3 == 0;
    const std::size_t n = 2 + trial % 7;
    const Graph g = oracle::random_graph(rng, n, 0.3, directed);
    const auto m = geodesics(g);
    for (NodeIndex i = 0; i < n; ++i)
      for (NodeIndex j = 0; j < n; ++j) {
        const int expected = oracle::simple_path_distance(g, i, j, directed);
        const Distance got = m(i, j);
        if (expected == oracle::kInf)
          CHECK_FALSE(got.is_finite());
        else
          CHECK(got == Distance(expected));
        if (i != j) CHECK((got == Distance(1)) == g.has_edge(i, j));
      }
    // Triangle inequality on finite entries.
    for (NodeIndex i = 0; i < n; ++i)
      for (NodeIndex j = 0; j < n; ++j)
        for (NodeIndex k = 0; k < n; ++k)
          if (m(i, k).is_finite() && m(k, j).is_finite())
            CHECK(m(i, j) <= Distance(m(i, k).hops() + m(k, j).hops()));
  }
}

TEST_CASE("connected components") {
  SUBCASE("edge plus isolated node") {
    const Graph g = parse("1 2\n3");
    const auto c = connected_components(g);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == std::vector<NodeIndex>{0, 1});
    CHECK(c[1] == std::vector<NodeIndex>{2});
  }
  SUBCASE("five grids with one contiguous pair") {
    const Graph g = parse("1\n0\n2\n10 1000");
    CHECK(connected_components(g).size() == 4);
  }
  SUBCASE("empty graph") {
    const Graph g = make_graph(3, {});
    CHECK(connected_components(g).size() == 3);
  }
  SUBCASE("weak components of a directed graph") {
    const Graph g = parse("a b\nc b", true);
    CHECK(connected_components(g).size() == 1);
  }
}

TEST_CASE("hypernode transform") {
  SUBCASE("path with two merged nodes") {
    const Graph g = parse("1 2\n2 3");
    const NodeIndex members[] = {g.index_of("1"), g.index_of("2")};
    const auto h = hypernode_transform(g, members);
    CHECK(h.transformed.node_count() == 2);
    CHECK(h.transformed.edge_count() == 1);
    CHECK(h.transformed.adjacent(h.hypernode, h.image[g.index_of("3")]));
  }
  SUBCASE("all nodes merged") {
    const Graph g = parse("1 2\n2 3\n1 3");
    const NodeIndex members[] = {0, 1, 2};
    const auto h = hypernode_transform(g, members);
    CHECK(h.transformed.node_count() == 1);
    CHECK(h.transformed.edge_count() == 0);
  }
  SUBCASE("parallel edges collapse to one") {
    const Graph g = parse("1 3\n2 3");
    const NodeIndex members[] = {g.index_of("1"), g.index_of("2")};
    const auto h = hypernode_transform(g, members);
    CHECK(h.transformed.edge_count() == 1);
  }
  SUBCASE("hypernode label avoids existing labels") {
    const Graph g = parse("h x\n_h x");
    const NodeIndex members[] = {g.index_of("x")};
    const auto h = hypernode_transform(g, members);
    CHECK(h.transformed.label(h.hypernode) == "__h");
  }
  SUBCASE("invalid member sets") {
    const Graph g = parse("1 2");
    CHECK_THROWS_AS(hypernode_transform(g, std::span<const NodeIndex>{}), ArgumentError);
    const NodeIndex bad[] = {9};
    CHECK_THROWS_AS(hypernode_transform(g, bad), ArgumentError);
  }
}

TEST_CASE("hypernode transform properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const bool directed = trial % 4 == 0;
    const std::size_t n = 3 + trial % 6;
    const Graph g = oracle::random_graph(rng, n, 0.35, directed);
    std::vector<NodeIndex> members;
    std::bernoulli_distribution pick(0.4);
    for (NodeIndex i = 0; i < n; ++i)
      if (pick(rng)) members.push_back(i);
    if (members.empty()) members.push_back(0);
    const auto h = hypernode_transform(g, members);
    std::vector<bool> in(n, false);
    for (NodeIndex m : members) in[m] = true;

    // Edges among outside nodes are preserved exactly.
    std::size_t outside_base = 0, outside_new = 0;
    for (auto [a, b] : g.edges())
      if (!in[a] && !in[b]) {
        ++outside_base;
        CHECK(h.transformed.has_edge(h.image[a], h.image[b]));
      }
    for (auto [a, b] : h.transformed.edges())
      if (a != h.hypernode && b != h.hypernode) ++outside_new;
    CHECK(outside_base == outside_new);

    // Hypernode edges exist iff some member had one.
    for (NodeIndex j = 0; j < n; ++j) {
      if (in[j]) continue;
      bool out_edge = false, in_edge = false;
      for (NodeIndex m : members) {
        out_edge = out_edge || g.has_edge(m, j);
        in_edge = in_edge || g.has_edge(j, m);
      }
      CHECK(h.transformed.has_edge(h.hypernode, h.image[j]) == out_edge);
      CHECK(h.transformed.has_edge(h.image[j], h.hypernode) == in_edge);
    }

    // Distance from h equals the best member distance once internal edges go.
    Graph stripped(directed);
    for (NodeIndex i = 0; i < n; ++i) stripped.add_node(g.label(i));
    for (auto [a, b] : g.edges())
      if (!(in[a] && in[b])) stripped.add_edge(a, b);
    const NodeIndex src[] = {h.hypernode};
    const auto from_h = bfs_distances(h.transformed, src, true);
    for (NodeIndex j = 0; j < n; ++j) {
      if (in[j]) continue;
      int best = oracle::kInf;
      for (NodeIndex m : members)
        best = std::min(best, oracle::simple_path_distance(stripped, m, j, directed));
      const Distance got = from_h[h.image[j]];
      if (best == oracle::kInf)
        CHECK_FALSE(got.is_finite());
      else
        CHECK(got == Distance(best));
    }
  }
}
