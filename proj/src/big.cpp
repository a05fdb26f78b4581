#include "bigs/big.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "bigs/design.hpp"
#include "bigs/errors.hpp"
#include "bigs/sampling.hpp"

namespace bigs {

namespace {

std::string normalize(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '-') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string join_labels(const Graph& g, std::span<const NodeIndex> nodes) {
  std::string out = "{";
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (a) out += ',';
    out += g.label(nodes[a]);
  }
  return out + "}";
}

}  // namespace

AncestorRule AncestorRule::full(int stages) {
  if (stages < 0) throw ArgumentError("full rule needs a stage count >= 0");
  return {RuleKind::Full, stages};
}

AncestorRule AncestorRule::motif_plus(int t) {
  if (t < 1) throw ArgumentError("motif_plus rule needs t >= 1");
  return {RuleKind::MotifPlus, t};
}

AncestorRule AncestorRule::parse(std::string_view text, std::optional<int> default_param) {
  const std::string norm = normalize(text);
  const auto colon = norm.find(':');
  const std::string head = norm.substr(0, colon);
  std::optional<int> param = default_param;
  if (colon != std::string::npos) {
    param = parse_int(std::string_view(norm).substr(colon + 1));
    if (!param) throw ArgumentError("bad rule parameter in '" + std::string(text) + "'");
  }
  auto no_param = [&](AncestorRule r) {
    if (colon != std::string::npos)
      throw ArgumentError("rule '" + head + "' takes no parameter");
    return r;
  };
  if (head == "full") {
    if (!param) throw ArgumentError("rule full needs a stage count (full:<T> or --stages)");
    return full(*param);
  }
  if (head == "motif_plus") {
    if (!param) throw ArgumentError("rule motif_plus needs t (motif_plus:<t> or --t)");
    return motif_plus(*param);
  }
  if (head == "motif_only") return no_param(motif_only());
  if (head == "acs_b") return no_param(acs_b());
  if (head == "acs_bstar") return no_param(acs_bstar());
  if (head == "acs_bdagger") return no_param(acs_bdagger());
  throw ArgumentError("unknown ancestor rule '" + std::string(text) +
                      "' (expected full:<T>, motif_only, motif_plus:<t>, acs_b, acs_bstar, "
                      "acs_bdagger)");
}

std::string AncestorRule::name() const {
  switch (kind) {
    case RuleKind::Full:
      return "full:" + std::to_string(param);
    case RuleKind::MotifOnly:
      return "motif_only";
    case RuleKind::MotifPlus:
      return "motif_plus:" + std::to_string(param);
    case RuleKind::AcsB:
      return "acs_b";
    case RuleKind::AcsBStar:
      return "acs_bstar";
    case RuleKind::AcsBDagger:
      return "acs_bdagger";
  }
  return "?";
}

Big::Big(std::vector<std::string> frame, std::vector<BigMotif> motifs,
         std::span<const std::pair<std::size_t, std::size_t>> edges, AncestorRule rule,
         int stages_required)
    : frame_(std::move(frame)),
      motifs_(std::move(motifs)),
      alpha_(frame_.size()),
      beta_(motifs_.size()),
      rule_(rule),
      stages_(stages_required) {
  for (std::size_t i = 0; i < frame_.size(); ++i) {
    if (frame_[i].empty()) throw ArgumentError("empty frame unit label");
    if (!unit_index_.emplace(frame_[i], i).second)
      throw ArgumentError("duplicate frame unit '" + frame_[i] + "'");
  }
  for (std::size_t k = 0; k < motifs_.size(); ++k) {
    if (motifs_[k].label.empty()) throw ArgumentError("empty motif label");
    if (!motif_index_.emplace(motifs_[k].label, k).second)
      throw ArgumentError("duplicate motif '" + motifs_[k].label + "'");
  }
  for (auto [i, k] : edges) {
    if (i >= frame_.size() || k >= motifs_.size()) throw ArgumentError("BIG edge out of range");
    alpha_[i].push_back(k);
    beta_[k].push_back(i);
  }
  for (auto& a : alpha_) std::sort(a.begin(), a.end());
  for (std::size_t k = 0; k < beta_.size(); ++k) {
    auto& b = beta_[k];
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw ArgumentError("duplicate BIG edge into motif '" + motifs_[k].label + "'");
    if (b.empty())
      throw InfeasibleError("motif '" + motifs_[k].label +
                            "' has no ancestor: an empty beta_k admits no feasible representation");
  }
  edge_count_ = edges.size();
}

std::optional<std::size_t> Big::find_unit(std::string_view label) const {
  auto it = unit_index_.find(std::string(label));
  if (it == unit_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Big::find_motif(std::string_view label) const {
  auto it = motif_index_.find(std::string(label));
  if (it == motif_index_.end()) return std::nullopt;
  return it->second;
}

bool Big::has_edge(std::size_t i, std::size_t k) const {
  const auto& a = alpha_.at(i);
  return std::binary_search(a.begin(), a.end(), k);
}

std::vector<std::pair<std::size_t, std::size_t>> Big::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < alpha_.size(); ++i)
    for (std::size_t k : alpha_[i]) out.emplace_back(i, k);
  return out;
}

Rational Big::theta() const {
  Rational sum = 0;
  for (const auto& m : motifs_) sum += m.y;
  return sum;
}

std::vector<Rational> Big::y_values() const {
  std::vector<Rational> y;
  y.reserve(motifs_.size());
  for (const auto& m : motifs_) y.push_back(m.y);
  return y;
}

Big build_big_tsbs(const Graph& g, const MotifSet& motifs, const AncestorRule& rule) {
  if (rule.is_acs()) throw ArgumentError("rule " + rule.name() + " applies to ACS populations");
  if (motifs.y.size() != motifs.size()) throw ArgumentError("motif set needs one y per motif");

  const ObservationDistances od(g);
  const GeodesicMatrix& geo = od.geodesics();

  std::vector<Distance> phi(motifs.size());
  for (std::size_t k = 0; k < motifs.size(); ++k) {
    phi[k] = od.diameter(motifs.motifs[k].members);
    if (!phi[k].is_finite())
      throw InfeasibleError("motif " + join_labels(g, motifs.motifs[k].members) +
                            " has infinite observation diameter: no T-SBS BIG representation "
                            "is feasible (two members cannot observe each other)");
  }

  std::vector<std::string> frame;
  frame.reserve(g.node_count());
  for (NodeIndex i = 0; i < g.node_count(); ++i) frame.push_back(g.label(i));

  std::vector<BigMotif> big_motifs;
  big_motifs.reserve(motifs.size());
  for (std::size_t k = 0; k < motifs.size(); ++k) {
    const Motif& m = motifs.motifs[k];
    const std::string prefix = m.cls.shape() == MotifShape::Component ? "comp" : m.cls.name();
    BigMotif bm{prefix + "_" + std::to_string(m.id), motifs.y[k], {}};
    for (NodeIndex i : m.members) bm.members.push_back(g.label(i));
    big_motifs.push_back(std::move(bm));
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  int stages = 0;
  switch (rule.kind) {
    case RuleKind::Full:
      stages = rule.param;
      for (std::size_t k = 0; k < motifs.size(); ++k)
        for (NodeIndex i = 0; i < g.node_count(); ++i)
          if (od(motifs.motifs[k].members, i) <= Distance(rule.param)) edges.emplace_back(i, k);
      break;
    case RuleKind::MotifOnly:
      for (std::size_t k = 0; k < motifs.size(); ++k) {
        stages = std::max(stages, phi[k].hops());
        for (NodeIndex i : motifs.motifs[k].members) edges.emplace_back(i, k);
      }
      break;
    case RuleKind::MotifPlus:
      for (std::size_t k = 0; k < motifs.size(); ++k) {
        const auto& members = motifs.motifs[k].members;
        const Distance lambda = motif_diameter(members, geo);
        if (!lambda.is_finite())
          throw InfeasibleError("motif " + join_labels(g, members) +
                                " has infinite diameter: motif_plus needs connected members");
        stages = std::max(stages, lambda.hops() + 2 * rule.param);
        std::vector<NodeIndex> ancestors(members.begin(), members.end());
        for (NodeIndex i : ancestor_neighborhood(members, geo, rule.param)) ancestors.push_back(i);
        std::sort(ancestors.begin(), ancestors.end());
        for (NodeIndex i : ancestors) edges.emplace_back(i, k);
      }
      break;
    default:
      break;
  }
  return Big(std::move(frame), std::move(big_motifs), edges, rule, stages);
}

Big build_big_acs(const AcsPopulation& pop, const AncestorRule& rule) {
  if (!rule.is_acs()) throw ArgumentError("rule " + rule.name() + " is not an ACS rule");
  const AcsStructure acs(pop);
  const Graph& g = pop.grid;

  std::vector<std::string> frame;
  std::vector<BigMotif> motifs;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    frame.push_back(g.label(i));
    motifs.push_back(BigMotif{g.label(i), pop.y[i], {g.label(i)}});
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (NodeIndex k = 0; k < g.node_count(); ++k) {
    std::set<NodeIndex> ancestors;
    if (acs.above(k)) {
      const auto& net = acs.networks()[static_cast<std::size_t>(acs.network_of(k))];
      ancestors.insert(net.begin(), net.end());
    } else if (!acs.is_edge_grid(k)) {
      ancestors.insert(k);
    } else {
      const auto& nets = acs.adjacent_networks(k);
      if (rule.kind == RuleKind::AcsBDagger && nets.size() >= 2)
        throw InfeasibleError("edge grid '" + g.label(k) + "' is contiguous to " +
                              std::to_string(nets.size()) +
                              " networks: acs_bdagger is infeasible here");
      if (rule.kind != RuleKind::AcsBDagger) ancestors.insert(k);
      if (rule.kind != RuleKind::AcsBStar)
        for (int id : nets) {
          const auto& net = acs.networks()[static_cast<std::size_t>(id)];
          ancestors.insert(net.begin(), net.end());
        }
    }
    for (NodeIndex i : ancestors) edges.emplace_back(i, k);
  }
  return Big(std::move(frame), std::move(motifs), edges, rule, 0);
}

SnowballProcedure::SnowballProcedure(const Graph& g, const Big& big, int stages)
    : g_(&g), stages_(stages), unit_node_(big.frame_size()), motif_count_(big.motif_count()) {
  if (stages < 0) throw ArgumentError("stage count must be non-negative");
  for (std::size_t i = 0; i < big.frame_size(); ++i) unit_node_[i] = g.find(big.unit(i));
  for (std::size_t k = 0; k < big.motif_count(); ++k) {
    std::vector<NodeIndex> nodes;
    for (const auto& label : big.motif(k).members) nodes.push_back(g.index_of(label));
    if (nodes.empty())
      throw ArgumentError("motif '" + big.motif(k).label + "' lists no members");
    motif_nodes_.push_back(std::move(nodes));
  }
}

ObservationProcedure::Result SnowballProcedure::observe(std::span<const std::size_t> s0) const {
  std::vector<NodeIndex> seeds;
  for (std::size_t i : s0)
    if (unit_node_.at(i)) seeds.push_back(*unit_node_[i]);
  const SampleGraph sample = snowball_sample(*g_, seeds, stages_);
  Result r{std::vector<bool>(unit_node_.size(), false), std::vector<bool>(motif_count_, false)};
  for (std::size_t i = 0; i < unit_node_.size(); ++i)
    r.units[i] = unit_node_[i] && sample.contains(*unit_node_[i]);
  for (std::size_t k = 0; k < motif_count_; ++k) r.motifs[k] = sample.observes(motif_nodes_[k]);
  return r;
}

ObservationProcedure::Result AcsProcedure::observe(std::span<const std::size_t> s0) const {
  const AcsObservation obs = acs_sample(*pop_, s0);
  Result r{std::vector<bool>(obs.entry.size()), std::vector<bool>(obs.entry.size())};
  for (std::size_t i = 0; i < obs.entry.size(); ++i) r.units[i] = r.motifs[i] = obs.observed(i);
  return r;
}

FeasibilityReport check_feasibility(const Big& big, const Design& design,
                                    const ObservationProcedure* procedure) {
  FeasibilityReport report;
  if (design.frame_size() != big.frame_size())
    report.violations.push_back("design frame size " + std::to_string(design.frame_size()) +
                                " differs from BIG frame size " +
                                std::to_string(big.frame_size()));
  for (std::size_t k = 0; k < big.motif_count(); ++k)
    if (big.beta(k).empty()) report.violations.push_back("motif '" + big.motif(k).label + "' has empty beta");
  if (!report.feasible()) return report;

  for (std::size_t i = 0; i < big.frame_size(); ++i)
    if (design.inclusion_probability(i) <= 0)
      report.violations.push_back("unit '" + big.unit(i) + "' has zero inclusion probability");

  if (procedure == nullptr) return report;
  for (std::size_t i = 0; i < big.frame_size(); ++i) {
    const std::size_t seed[] = {i};
    const auto seen = procedure->observe(seed);
    for (std::size_t k : big.alpha(i)) {
      if (!seen.motifs.at(k)) {
        report.violations.push_back("s0={" + big.unit(i) + "}: motif '" + big.motif(k).label +
                                    "' in alpha is not observed");
        continue;
      }
      for (std::size_t j : big.beta(k))
        if (!seen.units.at(j))
          report.violations.push_back("s0={" + big.unit(i) + "}: ancestor '" + big.unit(j) +
                                      "' of motif '" + big.motif(k).label + "' is not observed");
    }
  }
  return report;
}

}  // namespace bigs
