#include "bigs/builtin.hpp"

#include <algorithm>
#include <array>

#include "bigs/errors.hpp"

namespace bigs {

std::vector<std::string> builtin_names() { return {"thompson1990", "table4-bigs"}; }

AcsPopulation thompson1990() {
  AcsPopulation pop{Graph(false), {}, Rational(5)};
  const std::array<int, 5> y = {1, 0, 2, 10, 1000};
  for (int v : y) {
    pop.grid.add_node(std::to_string(v));
    pop.y.emplace_back(v);
  }
  for (NodeIndex i = 0; i + 1 < y.size(); ++i) pop.grid.add_edge(i, i + 1);
  return pop;
}

namespace {

constexpr std::size_t kFrame = 40;

struct CycleMotif {
  const char* label;
  std::vector<int> members;
  std::size_t beta_size;     // at T = 4
  std::vector<int> require;  // extra ancestors at T = 4
  std::vector<int> exclude;  // never ancestors at T = 4
};

std::vector<CycleMotif> cycle_motifs() {
  return {
      {"A", {3, 8, 21, 22}, 15, {}, {12}},
      {"B", {12, 13, 18, 31}, 16, {}, {3}},
      {"C", {12, 15, 18, 32}, 14, {}, {3}},
      {"D", {13, 18, 29, 32}, 12, {12}, {3}},
  };
}

}  // namespace

Table4Case table4_bigs(int stages) {
  if (stages != 2 && stages != 4)
    throw ArgumentError("table4-bigs is defined for stages 2 and 4, got " + std::to_string(stages));

  std::vector<std::string> frame;
  for (std::size_t i = 1; i <= kFrame; ++i) frame.push_back(std::to_string(i));
  auto index = [](int label) { return static_cast<std::size_t>(label - 1); };

  std::vector<BigMotif> motifs;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const auto cycles = cycle_motifs();
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const CycleMotif& m = cycles[k];
    BigMotif bm{m.label, 1, {}};
    for (int v : m.members) bm.members.push_back(std::to_string(v));
    motifs.push_back(bm);

    std::vector<int> ancestors = m.members;
    if (stages == 4) {
      ancestors.insert(ancestors.end(), m.require.begin(), m.require.end());
      for (int v = 1; ancestors.size() < m.beta_size; ++v) {
        const bool taken = std::find(ancestors.begin(), ancestors.end(), v) != ancestors.end();
        const bool banned = std::find(m.exclude.begin(), m.exclude.end(), v) != m.exclude.end();
        if (!taken && !banned) ancestors.push_back(v);
      }
    }
    std::sort(ancestors.begin(), ancestors.end());
    for (int v : ancestors) edges.emplace_back(index(v), k);
  }

  const AncestorRule rule = stages == 2 ? AncestorRule::motif_only() : AncestorRule::motif_plus(1);
  return Table4Case{Big(std::move(frame), std::move(motifs), edges, rule, stages),
                    Design::srswor(kFrame, 2), {index(3), index(12)}};
}

}  // namespace bigs
