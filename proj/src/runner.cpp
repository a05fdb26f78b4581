#include "bigs/runner.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "bigs/acs.hpp"
#include "bigs/big.hpp"
#include "bigs/builtin.hpp"
#include "bigs/errors.hpp"
#include "bigs/estimator.hpp"
#include "bigs/motif.hpp"
#include "bigs/version.hpp"

namespace bigs {

using nlohmann::json;

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null())
    v.reset();
  else
    v = j.at(key).get<T>();
}

template <typename T>
void get_value(const json& j, const char* key, T& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return in;
}

std::string fixed(const Rational& r, int decimals = 3) { return to_fixed(r, decimals); }

std::string fixed(double x, int decimals = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(decimals);
  s << x;
  return s.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t a = 0; a < parts.size(); ++a) out += (a ? sep : "") + parts[a];
  return out;
}

std::string unit_list(const Big& b, std::span<const std::size_t> units, const char* sep = " ") {
  std::vector<std::string> labels;
  for (std::size_t i : units) labels.push_back(b.unit(i));
  return join(labels, sep);
}

std::string motif_list(const Big& b, std::span<const std::size_t> motifs, const char* sep = " ") {
  std::vector<std::string> labels;
  for (std::size_t k : motifs) labels.push_back(b.motif(k).label);
  return join(labels, sep);
}

// Everything an experiment needs, resolved from the config. Members that
// others point into live in deques so their addresses stay put.
struct Setup {
  std::optional<Graph> graph;
  std::optional<AcsPopulation> acs;
  std::deque<Big> bigs;  // front() is the governing BIG
  std::optional<Design> design;
  std::optional<Table4Case> table4;
  std::vector<std::unique_ptr<Strategy>> strategies;
  std::vector<std::unique_ptr<Strategy>> helpers;  // bases of Rao-Blackwell strategies
  Scale scale = Scale::Total;
  std::vector<WeightScheme> weights;

  const Big& big() const { return bigs.front(); }
  const Big* acs_b() {
    if (!acs) return nullptr;
    for (const auto& b : bigs)
      if (b.rule() == AncestorRule::acs_b()) return &b;
    bigs.push_back(build_big_acs(*acs, AncestorRule::acs_b()));
    return &bigs.back();
  }
};

int input_count(const ExperimentConfig& c) {
  return (c.graph ? 1 : 0) + (c.big ? 1 : 0) + (c.builtin ? 1 : 0);
}

AcsPopulation load_acs(const ExperimentConfig& c, Graph g) {
  if (!c.values) throw ArgumentError("ACS rules on an edge list need --values");
  if (!c.threshold) throw ArgumentError("ACS rules on an edge list need --threshold");
  AcsPopulation pop{std::move(g), {}, parse_rational(*c.threshold)};
  pop.y.assign(pop.grid.node_count(), Rational(0));
  std::vector<bool> seen(pop.grid.node_count(), false);
  auto in = open_input(*c.values);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string label, value, extra;
    if (!(fields >> label)) continue;
    if (!(fields >> value) || (fields >> extra)) throw ParseError(line_no, "expected '<grid> <y>'");
    const auto i = pop.grid.find(label);
    if (!i) throw ParseError(line_no, "unknown grid '" + label + "'");
    pop.y[*i] = parse_rational(value);
    seen[*i] = true;
  }
  for (NodeIndex i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ArgumentError("no y-value for grid '" + pop.grid.label(i) + "'");
  return pop;
}

MotifClass single_motif_class(const ExperimentConfig& c) {
  if (c.motifs.size() != 1)
    throw ArgumentError("building a BIG from an edge list needs exactly one --motif class");
  return MotifClass::parse(c.motifs.front());
}

void resolve_big(const ExperimentConfig& c, Setup& s) {
  if (input_count(c) != 1)
    throw ArgumentError("give exactly one input: --graph, --big or --builtin");
  if (c.builtin) {
    if (*c.builtin == "thompson1990") {
      s.acs = thompson1990();
      s.bigs.push_back(
          build_big_acs(*s.acs, AncestorRule::parse(c.rule.value_or("acs_bstar"))));
    } else if (*c.builtin == "table4-bigs") {
      s.table4 = table4_bigs(c.stages.value_or(2));
      s.bigs.push_back(s.table4->big);
    } else {
      throw ArgumentError("unknown builtin '" + *c.builtin +
                          "' (expected thompson1990 or table4-bigs)");
    }
    return;
  }
  if (c.big) {
    auto in = open_input(*c.big);
    s.bigs.push_back(load_big(in));
    return;
  }
  auto in = open_input(*c.graph);
  s.graph = load_edge_list(in, c.directed);
  if (!c.rule) throw ArgumentError("building a BIG from an edge list needs --rule");
  const std::optional<int> param = c.t ? c.t : c.stages;
  const AncestorRule rule = AncestorRule::parse(*c.rule, param);
  if (rule.is_acs()) {
    s.acs = load_acs(c, *s.graph);
    s.bigs.push_back(build_big_acs(*s.acs, rule));
  } else {
    MotifSet motifs = enumerate_motifs(*s.graph, single_motif_class(c));
    s.bigs.push_back(build_big_tsbs(*s.graph, motifs, rule));
  }
}

void resolve_design(const ExperimentConfig& c, Setup& s) {
  const Big& b = s.big();
  if (c.design_file || c.design == "file") {
    if (!c.design_file) throw ArgumentError("--design file needs --design-file");
    auto in = open_input(*c.design_file);
    s.design = load_enumerated_design(in, b.frame());
    return;
  }
  if (c.design != "srswor")
    throw ArgumentError("unknown design '" + c.design + "' (expected srswor or file)");
  std::optional<std::size_t> n = c.n;
  if (!n && c.builtin) n = 2;
  if (!n) throw ArgumentError("SRSWOR needs a sample size (--n)");
  s.design = Design::srswor(b.frame_size(), *n);
}

void resolve_strategies(const ExperimentConfig& c, Setup& s) {
  s.scale = parse_scale(c.scale.value_or("total"));
  std::vector<std::string> names = c.estimators;
  if (names.empty()) names = s.acs ? std::vector<std::string>{"ht"} : std::vector<std::string>{"ht", "hh"};
  std::vector<std::string> weight_names = c.weights;
  if (weight_names.empty()) weight_names = {"equal"};
  for (const auto& w : weight_names) {
    if (w == "equal" || w == "equal_share" || w == "inv_alpha") {
      s.weights.push_back(WeightScheme::parse(w));
    } else {
      auto in = open_input(w);
      s.weights.push_back(WeightScheme::load(in));
    }
  }

  const Big& b = s.big();
  const Design& d = *s.design;
  for (const auto& name : names) {
    if (name == "ht") {
      s.strategies.push_back(std::make_unique<HtStrategy>(b, d, s.scale));
    } else if (name == "hh") {
      for (const auto& w : s.weights)
        s.strategies.push_back(std::make_unique<HhStrategy>(b, d, w, s.scale));
    } else if (name == "modified_ht") {
      if (!s.acs) throw ArgumentError("estimator modified_ht needs an ACS population");
      s.strategies.push_back(std::make_unique<AcsModifiedHtStrategy>(*s.acs, d, s.scale));
    } else if (name == "rb_modified_ht") {
      if (!s.acs) throw ArgumentError("estimator rb_modified_ht needs an ACS population");
      s.helpers.push_back(std::make_unique<AcsModifiedHtStrategy>(*s.acs, d, s.scale));
      s.strategies.push_back(
          std::make_unique<RaoBlackwellStrategy>(*s.helpers.back(), *s.acs_b(), d, c.cap));
    } else if (name == "rb_ht") {
      s.helpers.push_back(std::make_unique<HtStrategy>(b, d, s.scale));
      s.strategies.push_back(std::make_unique<RaoBlackwellStrategy>(*s.helpers.back(), b, d, c.cap));
    } else {
      throw ArgumentError("unknown estimator '" + name +
                          "' (expected ht, hh, modified_ht, rb_ht, rb_modified_ht)");
    }
  }
}

std::vector<std::size_t> parse_s0(const Big& b, const std::vector<std::string>& labels) {
  std::vector<std::size_t> s0;
  for (const auto& label : labels) {
    const auto i = b.find_unit(label);
    if (!i) throw ArgumentError("unknown frame unit '" + label + "' in --s0");
    s0.push_back(*i);
  }
  std::sort(s0.begin(), s0.end());
  if (std::adjacent_find(s0.begin(), s0.end()) != s0.end())
    throw ArgumentError("--s0 lists a unit twice");
  return s0;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Outcome {
  Report report;
  std::optional<std::string> raw;  // written instead of the report
  bool failed = false;
};

Outcome motifs_command(const ExperimentConfig& c) {
  if (!c.graph || c.big || c.builtin) throw ArgumentError("motifs needs --graph (and no other input)");
  if (c.motifs.empty()) throw ArgumentError("motifs needs at least one --motif class");
  auto in = open_input(*c.graph);
  const Graph g = load_edge_list(in, c.directed);
  const ObservationDistances od(g);

  Table counts{"counts", {"class", "count"}, {}};
  Table list{"motifs", {"class", "motif", "members", "lambda", "phi"}, {}};
  for (const auto& name : c.motifs) {
    const MotifClass cls = MotifClass::parse(name);
    const MotifSet set = enumerate_motifs(g, cls);
    counts.add_row({cls.name(), std::to_string(set.size())});
    for (const auto& m : set.motifs) {
      std::vector<std::string> members;
      for (NodeIndex i : m.members) members.push_back(g.label(i));
      list.add_row({cls.name(), std::to_string(m.id), join(members),
                    motif_diameter(m, od.geodesics()).to_string(), od.diameter(m.members).to_string()});
    }
  }
  Outcome o;
  o.report.tables = {std::move(counts), std::move(list)};
  return o;
}

Outcome big_command(const ExperimentConfig& c) {
  Setup s;
  resolve_big(c, s);
  const Big& b = s.big();
  Outcome o;
  if (c.action == "export") {
    std::ostringstream text;
    write_big(text, b);
    o.raw = text.str();
    return o;
  }
  if (c.action == "build") {
    std::optional<Design> d;
    if (c.n || c.design_file || c.builtin) {
      resolve_design(c, s);
      d = s.design;
    }
    Table t{"big", {"motif", "y", "members", "beta_size", "ancestors", "pi"}, {}};
    for (std::size_t k = 0; k < b.motif_count(); ++k)
      t.add_row({b.motif(k).label, to_exact_string(b.motif(k).y), join(b.motif(k).members),
                 std::to_string(b.beta(k).size()), unit_list(b, b.beta(k)),
                 d ? fixed(first_order_inclusion(*d, b, k), 4) : std::string()});
    Table summary{"summary", {"rule", "stages_required", "frame_size", "motifs", "edges", "theta"}, {}};
    summary.add_row({b.rule().name(), std::to_string(b.stages_required()),
                     std::to_string(b.frame_size()), std::to_string(b.motif_count()),
                     std::to_string(b.edge_count()), to_exact_string(b.theta())});
    o.report.tables = {std::move(summary), std::move(t)};
    return o;
  }
  if (c.action != "check") throw ArgumentError("unknown big action '" + c.action + "'");
  resolve_design(c, s);
  std::unique_ptr<ObservationProcedure> procedure;
  if (s.acs)
    procedure = std::make_unique<AcsProcedure>(*s.acs);
  else if (s.graph)
    procedure = std::make_unique<SnowballProcedure>(*s.graph, b, b.stages_required());
  const FeasibilityReport fr = check_feasibility(b, *s.design, procedure.get());
  Table t{"feasibility", {"status", "detail"}, {}};
  if (fr.feasible())
    t.add_row({"feasible", procedure ? "observation procedure simulated from every unit"
                                     : "structural checks only"});
  for (const auto& v : fr.violations) t.add_row({"violation", v});
  o.report.tables = {std::move(t)};
  o.failed = !fr.feasible();
  return o;
}

Outcome sample_command(const ExperimentConfig& c) {
  Setup s;
  resolve_big(c, s);
  resolve_design(c, s);
  resolve_strategies(c, s);
  const Big& b = s.big();
  Outcome o;
  std::vector<std::size_t> s0;
  if (!c.s0.empty()) {
    s0 = parse_s0(b, c.s0);
  } else if (s.table4 && !c.n && !c.design_file) {
    s0 = s.table4->s0;
  } else {
    const std::uint64_t seed = c.seed.value_or(fresh_seed());
    o.report.seed = seed;
    std::mt19937_64 rng(seed);
    s0 = s.design->draw(rng);
  }
  const SampleBig sb = realize_sample_big(b, s0);
  Table sample{"sample", {"s0", "omega", "out_ancestors"}, {}};
  sample.add_row({unit_list(b, sb.s0), motif_list(b, sb.omega), unit_list(b, sb.out_ancestors)});
  Table est{"estimates", {"estimator", "scale", "estimate", "exact"}, {}};
  Table terms{"terms", {"estimator", "label", "value", "probability"}, {}};
  for (const auto& st : s.strategies) {
    const EstimatorReport r = st->evaluate(s0);
    est.add_row({r.estimator, scale_name(r.scale), fixed(r.estimate), to_exact_string(r.estimate)});
    for (const auto& term : r.terms)
      terms.add_row({r.estimator, term.label, to_exact_string(term.value), fixed(term.probability, 4)});
  }
  o.report.tables = {std::move(sample), std::move(est), std::move(terms)};
  return o;
}

Outcome enumerate_command(const ExperimentConfig& c) {
  Setup s;
  resolve_big(c, s);
  resolve_design(c, s);
  resolve_strategies(c, s);
  const Big& b = s.big();
  const Design& d = *s.design;
  const Rational theta = scaled_target(b, s.scale);

  Table inclusion{"inclusion", {"motif", "beta_size", "pi", "pi_exact"}, {}};
  for (std::size_t k = 0; k < b.motif_count(); ++k) {
    const Rational pi = first_order_inclusion(d, b, k);
    inclusion.add_row({b.motif(k).label, std::to_string(b.beta(k).size()), fixed(pi, 4),
                       to_exact_string(pi)});
  }
  Table moments{"moments",
                {"estimator", "scale", "theta", "expectation", "variance", "mse", "expectation_exact",
                 "variance_exact", "mse_exact"},
                {}};
  Table samples{"samples", {"estimator", "s0", "probability", "estimate"}, {}};
  std::optional<Rational> ht_variance;
  std::vector<std::pair<std::string, Rational>> hh_variances;
  for (const auto& st : s.strategies) {
    std::vector<SampleEstimate> rows;
    const ExactMoments m = exact_moments(*st, d, theta, &rows, c.cap);
    moments.add_row({st->name(), scale_name(st->scale()), fixed(theta), fixed(m.expectation),
                     fixed(m.variance, 1), fixed(m.mse, 1), to_exact_string(m.expectation),
                     to_exact_string(m.variance), to_exact_string(m.mse)});
    for (const auto& r : rows)
      samples.add_row({st->name(), unit_list(b, r.s0), to_exact_string(r.probability), fixed(r.estimate)});
    if (st->name() == "ht") ht_variance = m.variance;
    if (st->name().rfind("hh_", 0) == 0) hh_variances.emplace_back(st->name(), m.variance);
  }
  Outcome o;
  o.report.tables = {std::move(inclusion), std::move(moments)};

  // Variance difference of each HH-type estimator against HT, both ways.
  if (ht_variance && !hh_variances.empty() && s.scale == Scale::Total) {
    Table diff{"variance_difference", {"estimator", "enumerated", "delta_form"}, {}};
    const auto y = b.y_values();
    std::size_t w = 0;
    for (const auto& [name, var] : hh_variances) {
      std::string form;
      try {
        form = fixed(delta_matrix(b, d, s.weights.at(w)).quadratic_form(y), 3);
      } catch (const ConstraintError&) {
        form = "undefined";
      }
      diff.add_row({name, fixed(var - *ht_variance, 3), form});
      ++w;
    }
    o.report.tables.push_back(std::move(diff));
  }
  o.report.tables.push_back(std::move(samples));
  return o;
}

Outcome simulate_command(const ExperimentConfig& c) {
  Setup s;
  resolve_big(c, s);
  resolve_design(c, s);
  resolve_strategies(c, s);
  const std::uint64_t seed = c.seed.value_or(fresh_seed());
  const double theta = to_double(scaled_target(s.big(), s.scale));
  Table t{"monte_carlo",
          {"estimator", "scale", "replicates", "seed", "theta", "mean", "mean_se", "variance",
           "variance_se", "mse", "mse_se"},
          {}};
  for (const auto& st : s.strategies) {
    const MonteCarloMoments m = monte_carlo_moments(*st, *s.design, theta, c.replicates, seed, c.threads);
    t.add_row({st->name(), scale_name(st->scale()), std::to_string(m.replicates),
               std::to_string(m.seed), fixed(theta), fixed(m.mean), fixed(m.mean_se), fixed(m.variance),
               fixed(m.variance_se), fixed(m.mse), fixed(m.mse_se)});
  }
  Outcome o;
  o.report.seed = seed;
  o.report.tables = {std::move(t)};
  return o;
}

// Observed grids as "s0 first, then the rest", with ineligible grids starred.
std::string acs_omega(const AcsPopulation& pop, std::span<const std::size_t> s0,
                      const std::vector<bool>& observed, const std::vector<bool>& ineligible) {
  std::vector<std::string> parts;
  for (std::size_t i : s0)
    if (observed[i]) parts.push_back(pop.grid.label(i) + (ineligible[i] ? "*" : ""));
  for (std::size_t i = 0; i < observed.size(); ++i)
    if (observed[i] && std::find(s0.begin(), s0.end(), i) == s0.end())
      parts.push_back(pop.grid.label(i) + (ineligible[i] ? "*" : ""));
  return join(parts, ",");
}

Outcome reproduce_five_grid(const ExperimentConfig& c) {
  const AcsPopulation pop = thompson1990();
  const Scale scale = parse_scale(c.scale.value_or("mean"));
  const Design d = Design::srswor(pop.grid.node_count(), c.n.value_or(2));
  const Big b = build_big_acs(pop, AncestorRule::acs_b());
  const Big bstar = build_big_acs(pop, AncestorRule::acs_bstar());
  const Big bdagger = build_big_acs(pop, AncestorRule::acs_bdagger());
  const AcsModifiedHtStrategy tstar(pop, d, scale);
  const HtStrategy t_star_big(bstar, d, scale);
  const HtStrategy t_dagger_big(bdagger, d, scale);
  const RaoBlackwellStrategy rb_tstar(tstar, b, d);
  const RaoBlackwellStrategy rb_bstar(t_star_big, bstar, d);

  Table t1{"estimates_by_s0",
           {"s0", "omega_b", "t_star_ht", "omega_bstar", "t_ht_bstar", "omega_bdagger", "t_ht_bdagger"},
           {}};
  Table rb{"rao_blackwell", {"s0", "strategy", "estimate", "rb_estimate"}, {}};
  for_each_sample(d, [&](const WeightedSample& w) {
    const AcsObservation obs = acs_sample(pop, w.units);
    std::vector<bool> observed(obs.entry.size()), ineligible(obs.entry.size(), false);
    for (std::size_t i = 0; i < observed.size(); ++i) {
      observed[i] = obs.observed(i);
      ineligible[i] = observed[i] && !obs.above[i] && obs.entry[i] != AcsEntry::Direct;
    }
    auto omega_of = [&](const Big& big) {
      std::vector<bool> in(observed.size(), false);
      for (std::size_t k : realize_sample_big(big, w.units).omega) in[k] = true;
      return acs_omega(pop, w.units, in, std::vector<bool>(observed.size(), false));
    };
    std::vector<std::string> s0_labels;
    for (std::size_t i : w.units) s0_labels.push_back(pop.grid.label(i));
    const std::string s0 = join(s0_labels, ",");
    t1.add_row({s0, acs_omega(pop, w.units, observed, ineligible), fixed(tstar.estimate(w.units)),
                omega_of(bstar), fixed(t_star_big.estimate(w.units)), omega_of(bdagger),
                fixed(t_dagger_big.estimate(w.units))});
    rb.add_row({s0, "b_tstar", fixed(tstar.estimate(w.units)), fixed(rb_tstar.estimate(w.units))});
    rb.add_row({s0, "bstar_t", fixed(t_star_big.estimate(w.units)), fixed(rb_bstar.estimate(w.units))});
  }, c.cap);

  const Rational theta = scaled_target(b, scale);
  Table moments{"moments", {"strategy", "expectation", "variance", "variance_exact"}, {}};
  const std::pair<const char*, const Strategy*> strategies[] = {
      {"b_tstar", &tstar}, {"bstar_t", &t_star_big}, {"bdagger_t", &t_dagger_big},
      {"b_rb_tstar", &rb_tstar}};
  for (auto [name, st] : strategies) {
    const ExactMoments m = exact_moments(*st, d, theta);
    moments.add_row({name, fixed(m.expectation), fixed(m.variance, 1), to_exact_string(m.variance)});
  }
  Table inclusion{"inclusion", {"grid", "pi_b", "pi_bstar", "pi_bdagger"}, {}};
  for (std::size_t k = 0; k < b.motif_count(); ++k)
    inclusion.add_row({b.motif(k).label, to_exact_string(first_order_inclusion(d, b, k)),
                       to_exact_string(first_order_inclusion(d, bstar, k)),
                       to_exact_string(first_order_inclusion(d, bdagger, k))});
  Outcome o;
  o.report.tables = {std::move(t1), std::move(moments), std::move(rb), std::move(inclusion)};
  return o;
}

Outcome reproduce_table4(const ExperimentConfig& c) {
  const Scale scale = parse_scale(c.scale.value_or("total"));
  Table rows{"cycle_bigs", {"stages", "unit", "motif", "members", "beta_size", "pi", "alpha_sizes"}, {}};
  Table est{"estimates", {"stages", "estimator", "estimate", "exact"}, {}};
  for (int stages : {2, 4}) {
    const Table4Case tc = table4_bigs(stages);
    const Big& b = tc.big;
    for (std::size_t i : tc.s0)
      for (std::size_t k : b.alpha(i)) {
        std::vector<std::string> alpha_sizes;
        if (stages == 2)
          for (std::size_t j : b.beta(k)) alpha_sizes.push_back(std::to_string(b.alpha(j).size()));
        rows.add_row({std::to_string(stages), b.unit(i), b.motif(k).label, join(b.motif(k).members),
                      std::to_string(b.beta(k).size()), fixed(first_order_inclusion(tc.design, b, k), 4),
                      join(alpha_sizes)});
      }
    std::vector<std::unique_ptr<Strategy>> strategies;
    strategies.push_back(std::make_unique<HtStrategy>(b, tc.design, scale));
    strategies.push_back(std::make_unique<HhStrategy>(b, tc.design, WeightScheme::equal_share(), scale));
    // |alpha_i| is only known for the 2-stage BIG.
    if (stages == 2)
      strategies.push_back(std::make_unique<HhStrategy>(b, tc.design, WeightScheme::inv_alpha(), scale));
    for (const auto& st : strategies) {
      const Rational value = st->estimate(tc.s0);
      est.add_row({std::to_string(stages), st->name(), fixed(value), to_exact_string(value)});
    }
  }
  Outcome o;
  o.report.tables = {std::move(rows), std::move(est)};
  return o;
}

Outcome execute(const ExperimentConfig& c) {
  if (c.format != "csv" && c.format != "json")
    throw ArgumentError("unknown format '" + c.format + "' (expected csv or json)");
  Outcome o;
  if (c.command == "motifs")
    o = motifs_command(c);
  else if (c.command == "big")
    o = big_command(c);
  else if (c.command == "sample")
    o = sample_command(c);
  else if (c.command == "enumerate")
    o = enumerate_command(c);
  else if (c.command == "simulate")
    o = simulate_command(c);
  else if (c.command == "reproduce") {
    if (!c.builtin) throw ArgumentError("reproduce needs a builtin name");
    if (*c.builtin == "thompson1990")
      o = reproduce_five_grid(c);
    else if (*c.builtin == "table4-bigs")
      o = reproduce_table4(c);
    else
      throw ArgumentError("unknown builtin '" + *c.builtin + "' (expected thompson1990 or table4-bigs)");
  } else {
    throw ArgumentError("unknown command '" + c.command + "'");
  }
  o.report.command = c.command == "big" ? "big " + c.action : c.command;
  o.report.version = kVersion;
  o.report.config = c.to_json();
  if (o.report.seed) o.report.config["seed"] = *o.report.seed;
  return o;
}

}  // namespace

json ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  j["action"] = action;
  put_optional(j, "graph", graph);
  put_optional(j, "big", big);
  put_optional(j, "builtin", builtin);
  j["directed"] = directed;
  put_optional(j, "values", values);
  put_optional(j, "threshold", threshold);
  j["motifs"] = motifs;
  put_optional(j, "rule", rule);
  put_optional(j, "t", t);
  put_optional(j, "stages", stages);
  j["design"] = design;
  put_optional(j, "n", n);
  put_optional(j, "design_file", design_file);
  j["estimators"] = estimators;
  j["weights"] = weights;
  put_optional(j, "scale", scale);
  put_optional(j, "seed", seed);
  j["replicates"] = replicates;
  j["s0"] = s0;
  j["cap"] = cap;
  j["format"] = format;
  return j;
}

void ExperimentConfig::merge_json(const json& j) {
  static const std::vector<std::string> known = {
      "command", "action", "graph", "big", "builtin", "directed", "values", "threshold",
      "motifs", "rule", "t", "stages", "design", "n", "design_file", "estimators", "weights",
      "scale", "seed", "replicates", "threads", "s0", "cap", "format", "out"};
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ArgumentError("unknown config key '" + key + "'");
  try {
    get_value(j, "command", command);
    get_value(j, "action", action);
    get_optional(j, "graph", graph);
    get_optional(j, "big", big);
    get_optional(j, "builtin", builtin);
    get_value(j, "directed", directed);
    get_optional(j, "values", values);
    get_optional(j, "threshold", threshold);
    get_value(j, "motifs", motifs);
    get_optional(j, "rule", rule);
    get_optional(j, "t", t);
    get_optional(j, "stages", stages);
    get_value(j, "design", design);
    get_optional(j, "n", n);
    get_optional(j, "design_file", design_file);
    get_value(j, "estimators", estimators);
    get_value(j, "weights", weights);
    get_optional(j, "scale", scale);
    get_optional(j, "seed", seed);
    get_value(j, "replicates", replicates);
    get_value(j, "threads", threads);
    get_value(j, "s0", s0);
    get_value(j, "cap", cap);
    get_value(j, "format", format);
    get_optional(j, "out", out);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config value: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.merge_json(j);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  auto in = open_input(path);
  try {
    return ExperimentConfig::from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(0, "config '" + path + "': " + e.what());
  }
}

Report build_report(const ExperimentConfig& config) {
  Outcome o = execute(config);
  if (o.raw) throw ArgumentError("'" + config.command + " " + config.action + "' produces no report");
  return o.report;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = execute(config);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  if (config.out) {
    file.open(*config.out);
    if (!file) {
      err << "error: cannot write '" << *config.out << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = config.out ? static_cast<std::ostream&>(file) : out;
  if (o.raw)
    sink << *o.raw;
  else if (config.format == "json")
    write_json(sink, o.report);
  else
    write_csv(sink, o.report);
  if (o.failed) {
    err << "feasibility check failed\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

}  // namespace bigs
