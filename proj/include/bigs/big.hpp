#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bigs/acs.hpp"
#include "bigs/graph.hpp"
#include "bigs/motif.hpp"
#include "bigs/rational.hpp"

namespace bigs {

class Design;

enum class RuleKind { Full, MotifOnly, MotifPlus, AcsB, AcsBStar, AcsBDagger };

/// How ancestors beta_k are assigned. `param` is T for Full and t for
/// MotifPlus, unused otherwise.
struct AncestorRule {
  RuleKind kind = RuleKind::Full;
  int param = 0;

  static AncestorRule full(int stages);
  static AncestorRule motif_only() { return {RuleKind::MotifOnly, 0}; }
  static AncestorRule motif_plus(int t);
  static AncestorRule acs_b() { return {RuleKind::AcsB, 0}; }
  static AncestorRule acs_bstar() { return {RuleKind::AcsBStar, 0}; }
  static AncestorRule acs_bdagger() { return {RuleKind::AcsBDagger, 0}; }

  /// full:<T>, motif_only, motif_plus:<t>, acs_b, acs_bstar, acs_bdagger.
  /// A missing parameter is taken from `default_param`.
  static AncestorRule parse(std::string_view text, std::optional<int> default_param = {});
  std::string name() const;
  bool is_acs() const noexcept {
    return kind == RuleKind::AcsB || kind == RuleKind::AcsBStar || kind == RuleKind::AcsBDagger;
  }

  friend bool operator==(const AncestorRule&, const AncestorRule&) = default;
};

struct BigMotif {
  std::string label;
  Rational y = 1;
  std::vector<std::string> members;  // node labels, may be empty
};

/// Bipartite incidence graph B = (F, Omega; H). Edges run from frame units
/// to motifs only. Immutable after construction.
class Big {
 public:
  /// `edges` holds (frame index, motif index) pairs. Throws ArgumentError on
  /// duplicate labels or edges and InfeasibleError when some beta_k is empty.
  Big(std::vector<std::string> frame, std::vector<BigMotif> motifs,
      std::span<const std::pair<std::size_t, std::size_t>> edges, AncestorRule rule,
      int stages_required);

  std::size_t frame_size() const noexcept { return frame_.size(); }
  std::size_t motif_count() const noexcept { return motifs_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<std::string>& frame() const noexcept { return frame_; }
  const std::string& unit(std::size_t i) const { return frame_.at(i); }
  const BigMotif& motif(std::size_t k) const { return motifs_.at(k); }
  const std::vector<BigMotif>& motifs() const noexcept { return motifs_; }
  std::optional<std::size_t> find_unit(std::string_view label) const;
  std::optional<std::size_t> find_motif(std::string_view label) const;

  /// alpha_i, ascending motif indices.
  const std::vector<std::size_t>& alpha(std::size_t i) const { return alpha_.at(i); }
  /// beta_k, ascending frame indices.
  const std::vector<std::size_t>& beta(std::size_t k) const { return beta_.at(k); }
  bool has_edge(std::size_t i, std::size_t k) const;
  /// H as (frame, motif) pairs ordered by frame then motif.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  const AncestorRule& rule() const noexcept { return rule_; }
  int stages_required() const noexcept { return stages_; }
  /// Sum of y over all motifs.
  Rational theta() const;
  std::vector<Rational> y_values() const;

 private:
  std::vector<std::string> frame_;
  std::vector<BigMotif> motifs_;
  std::unordered_map<std::string, std::size_t> unit_index_;
  std::unordered_map<std::string, std::size_t> motif_index_;
  std::vector<std::vector<std::size_t>> alpha_;
  std::vector<std::vector<std::size_t>> beta_;
  std::size_t edge_count_ = 0;
  AncestorRule rule_;
  int stages_ = 0;
};

/// BIG for T-stage snowball sampling with F = U.
///
/// Full(T): h_ik = 1 iff d_{i,k} <= T. MotifOnly: beta_k = M_k with
/// T = max phi_k. MotifPlus(t): beta_k = M_k u beta^t(M_k) with
/// T = max(lambda_k + 2t). Throws InfeasibleError when some motif has an
/// infinite observation diameter, or an ancestor set comes out empty.
Big build_big_tsbs(const Graph& g, const MotifSet& motifs, const AncestorRule& rule);

/// BIG for adaptive cluster sampling with F = Omega = grids.
Big build_big_acs(const AcsPopulation& pop, const AncestorRule& rule);

/// Text format:
///
///   # comment
///   RULE full:2        (optional, default full:<STAGES>)
///   STAGES 2           (optional, default 0)
///   FRAME
///   <unit> <unit> ...
///   MOTIFS
///   <id> <y> [member ...]
///   EDGES
///   <unit> <motif id>
///
/// Throws ParseError on malformed or duplicate entries and InfeasibleError
/// when a motif has no incident edge.
Big load_big(std::istream& in);
void write_big(std::ostream& out, const Big& big);

/// Observation procedure run from a given initial sample. Reports which
/// frame units became known and which motifs were observed.
class ObservationProcedure {
 public:
  struct Result {
    std::vector<bool> units;
    std::vector<bool> motifs;
  };
  virtual ~ObservationProcedure() = default;
  virtual Result observe(std::span<const std::size_t> s0) const = 0;
};

/// T-SBS on `g`. Frame units and motif members are matched to graph nodes by
/// label.
class SnowballProcedure final : public ObservationProcedure {
 public:
  SnowballProcedure(const Graph& g, const Big& big, int stages);
  Result observe(std::span<const std::size_t> s0) const override;

 private:
  const Graph* g_;
  int stages_;
  std::vector<std::optional<NodeIndex>> unit_node_;
  std::vector<std::vector<NodeIndex>> motif_nodes_;
  std::size_t motif_count_;
};

/// Plain ACS observation; grid i is both frame unit i and motif i.
class AcsProcedure final : public ObservationProcedure {
 public:
  explicit AcsProcedure(const AcsPopulation& pop) : pop_(&pop) {}
  Result observe(std::span<const std::size_t> s0) const override;

 private:
  const AcsPopulation* pop_;
};

struct FeasibilityReport {
  std::vector<std::string> violations;
  bool feasible() const noexcept { return violations.empty(); }
};

/// Checks that every beta_k is nonempty and every frame unit has positive
/// inclusion probability. With a procedure, also checks from each singleton
/// {i} that every k in alpha_i is observed together with all of beta_k.
FeasibilityReport check_feasibility(const Big& big, const Design& design,
                                    const ObservationProcedure* procedure = nullptr);

}  // namespace bigs
