#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "bigs/builtin.hpp"
#include "bigs/design.hpp"
#include "bigs/errors.hpp"
#include "bigs/sampling.hpp"
#include "oracles.hpp"

using namespace bigs;

namespace {

bool hits(const std::vector<std::size_t>& s0, const std::vector<std::size_t>& beta) {
  for (std::size_t i : beta)
    if (std::find(s0.begin(), s0.end(), i) != s0.end()) return true;
  return false;
}

// Inclusion probabilities by summing p(s0) over the enumerated support.
Rational enumerated_pi(const Design& d, const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b) {
  Rational total = 0;
  for (const auto& w : enumerate_design(d))
    if (hits(w.units, a) && hits(w.units, b)) total += w.probability;
  return total;
}

Design random_enumerated(std::mt19937_64& rng, std::size_t N) {
  std::vector<WeightedSample> support;
  std::set<std::vector<std::size_t>> used;
  std::uniform_int_distribution<int> weight(1, 5);
  std::bernoulli_distribution coin(0.5);
  int total = 0;
  for (int tries = 0; tries < 12; ++tries) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < N; ++i)
      if (coin(rng)) s.push_back(i);
    if (s.empty() || !used.insert(s).second) continue;
    const int w = weight(rng);
    total += w;
    support.push_back({s, w});
  }
  if (support.empty()) support.push_back({{0}, total = 1});
  for (auto& w : support) w.probability /= total;
  return Design::enumerated(N, support);
}

}  // namespace

TEST_CASE("SRSWOR probabilities") {
  const Design d = Design::srswor(40, 2);
  CHECK(d.inclusion_probability(0) == Rational(1, 20));
  CHECK(d.joint_inclusion_probability(0, 1) == Rational(1, 780));
  CHECK(d.joint_inclusion_probability(3, 3) == Rational(1, 20));
  CHECK(d.support_size() == BigInt(780));
  const std::size_t four[] = {0, 1, 2, 3};
  CHECK(1 - d.exclusion_probability(four) == Rational(5, 26));
  CHECK(to_fixed(1 - d.exclusion_probability(four), 4) == "0.1923");

  const std::size_t cases[][2] = {{15, 6154}, {16, 6462}, {14, 5833}, {12, 5154}};
  for (auto [size, expected] : cases) {
    std::vector<std::size_t> units(size);
    for (std::size_t i = 0; i < size; ++i) units[i] = i;
    const std::string text = to_fixed(1 - d.exclusion_probability(units), 4);
    CHECK(text == "0." + std::to_string(expected));
  }
  CHECK_THROWS_AS(Design::srswor(3, 4), ArgumentError);
  CHECK(Design::srswor(3, 3).inclusion_probability(2) == Rational(1));
}

TEST_CASE("enumerated designs") {
  std::ifstream in(BIGS_TEST_DATA_DIR "/pairs_design.txt");
  REQUIRE(in);
  const std::vector<std::string> frame{"H1", "H2", "H3"};
  const Design d = load_enumerated_design(in, frame);
  CHECK(d.kind() == Design::Kind::Enumerated);
  CHECK(d.inclusion_probability(0) == Rational(1, 2));
  CHECK(d.inclusion_probability(1) == Rational(1));
  CHECK(d.joint_inclusion_probability(0, 2) == Rational(0));
  const std::size_t both_ends[] = {0, 2};
  CHECK(d.exclusion_probability(both_ends) == Rational(0));

  SUBCASE("validation") {
    CHECK_THROWS_AS(Design::enumerated(3, {{{0}, Rational(1, 2)}}), ArgumentError);
    CHECK_THROWS_AS(Design::enumerated(3, {{{0}, Rational(1, 2)}, {{0}, Rational(1, 2)}}),
                    ArgumentError);
    CHECK_THROWS_AS(Design::enumerated(3, {{{4}, Rational(1)}}), ArgumentError);
    std::istringstream bad("1/2: H1 H9\n1/2: H2\n");
    CHECK_THROWS_AS(load_enumerated_design(bad, frame), ParseError);
    std::istringstream no_colon("1/2 H1\n");
    CHECK_THROWS_AS(load_enumerated_design(no_colon, frame), ParseError);
  }
}

TEST_CASE("enumeration order and cap") {
  const Design d = Design::srswor(4, 2);
  const auto all = enumerate_design(d);
  REQUIRE(all.size() == 6);
  CHECK(all.front().units == std::vector<std::size_t>{0, 1});
  CHECK(all.back().units == std::vector<std::size_t>{2, 3});
  Rational sum = 0;
  for (const auto& w : all) sum += w.probability;
  CHECK(sum == Rational(1));
  CHECK_THROWS_AS(enumerate_design(d, 5), EnumerationCapError);
  CHECK_THROWS_AS(Design::srswor(4, 0), ArgumentError);
}

TEST_CASE("draws follow the design") {
  const Design d = Design::srswor(6, 3);
  std::mt19937_64 rng(1);
  std::vector<int> counts(6, 0);
  const int reps = 30000;
  for (int r = 0; r < reps; ++r) {
    auto s = d.draw(rng);
    REQUIRE(s.size() == 3);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    for (std::size_t i : s) ++counts[i];
  }
  // pi = 1/2; 5 standard errors on the count.
  for (int c : counts) CHECK(std::abs(c - reps / 2) < 5 * std::sqrt(reps * 0.25));

  std::ifstream in(BIGS_TEST_DATA_DIR "/pairs_design.txt");
  const std::vector<std::string> frame{"H1", "H2", "H3"};
  const Design e = load_enumerated_design(in, frame);
  for (int r = 0; r < 200; ++r) {
    const auto s = e.draw(rng);
    CHECK((s == std::vector<std::size_t>{0, 1} || s == std::vector<std::size_t>{1, 2}));
  }
}

TEST_CASE("motif inclusion probabilities against enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t N = 2 + trial % 6;
    const Big b = oracle::random_big(rng, N, 1 + trial % 5);
    const Design d = trial % 2 ? Design::srswor(N, 1 + trial % N) : random_enumerated(rng, N);
    for (std::size_t k = 0; k < b.motif_count(); ++k) {
      const Rational pk = first_order_inclusion(d, b, k);
      CHECK(pk == enumerated_pi(d, b.beta(k), b.beta(k)));
      for (std::size_t l = 0; l < b.motif_count(); ++l) {
        const Rational pl = first_order_inclusion(d, b, l);
        const Rational pkl = second_order_inclusion(d, b, k, l);
        CHECK(pkl == enumerated_pi(d, b.beta(k), b.beta(l)));
        CHECK(pkl == second_order_inclusion(d, b, l, k));
        CHECK(pkl <= pk);
        CHECK(pkl <= pl);
        CHECK(pkl >= 0);
        CHECK(pkl >= pk + pl - 1);
      }
    }
    // Sum of pi_i is the expected sample size.
    Rational expected_size = 0;
    for (const auto& w : enumerate_design(d)) expected_size += w.probability * w.units.size();
    Rational sum_pi = 0;
    for (std::size_t i = 0; i < N; ++i) sum_pi += d.inclusion_probability(i);
    CHECK(sum_pi == expected_size);
  }
}

TEST_CASE("inclusion grows with the ancestor set") {
  const Design d = Design::srswor(10, 3);
  Rational previous = 0;
  std::vector<std::size_t> units;
  for (std::size_t i = 0; i < 10; ++i) {
    units.push_back(i);
    const Rational p = 1 - d.exclusion_probability(units);
    // Certain once fewer than n units lie outside.
    if (units.size() <= 7)
      CHECK(p > previous);
    else
      CHECK(p == 1);
    previous = p;
  }
  CHECK(previous == Rational(1));
}

TEST_CASE("snowball and induced samples") {
  const Graph g = make_graph(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const NodeIndex seed[] = {0};
  SUBCASE("zero stages") {
    const auto s = snowball_sample(g, seed, 0);
    CHECK(s.nodes() == std::vector<NodeIndex>{0});
    CHECK(s.edges().empty());
    const NodeIndex solo[] = {0};
    CHECK(s.observes(solo));
  }
  SUBCASE("two stages") {
    const auto s = snowball_sample(g, seed, 2);
    CHECK(s.nodes() == std::vector<NodeIndex>{0, 1, 2});
    CHECK(s.reference_nodes() == std::vector<NodeIndex>{0, 1});
    CHECK(s.edges().size() == 2);
    CHECK(s.waves()[2] == 2);
    CHECK(s.waves()[3] == -1);
    const NodeIndex edge12[] = {1, 2};
    const NodeIndex edge23[] = {2, 3};
    CHECK(s.observes(edge12));
    CHECK_FALSE(s.observes(edge23));
  }
  SUBCASE("induced observation") {
    const NodeIndex nodes[] = {0, 2, 1};
    const auto s = induced_sample(g, nodes);
    CHECK(s.edges().size() == 2);
    const NodeIndex pair[] = {0, 2};
    CHECK(s.observes(pair));
    const NodeIndex out[] = {2, 3};
    CHECK_FALSE(s.observes(out));
  }
  CHECK_THROWS_AS(snowball_sample(g, seed, -1), ArgumentError);
}

TEST_CASE("sample BIG realisation") {
  const Big b = build_big_acs(thompson1990(), AncestorRule::acs_b());
  const std::size_t s0[] = {2, 4};
  const SampleBig s = realize_sample_big(b, s0);
  CHECK(s.omega == std::vector<std::size_t>{2, 3, 4});
  CHECK(s.out_ancestors == std::vector<std::size_t>{3});
  for (auto [i, k] : s.edges) {
    CHECK(b.has_edge(i, k));
    CHECK(std::find(s.omega.begin(), s.omega.end(), k) != s.omega.end());
  }
}
