#include <iostream>

#include <CLI11.hpp>

#include "bigs/errors.hpp"
#include "bigs/runner.hpp"
#include "bigs/version.hpp"

namespace {

// Flags that are set on the command line override the config file.
struct Flags {
  std::string config;
  std::optional<std::string> graph, big, builtin, values, threshold, rule, design, design_file,
      scale, format, out;
  std::vector<std::string> motifs, estimators, weights, s0;
  std::optional<int> t, stages;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed, replicates, cap;
  std::optional<unsigned> threads;
  bool directed = false;
};

void add_input_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON experiment config; flags override its fields");
  app->add_option("--graph", f.graph, "edge-list file");
  app->add_option("--big", f.big, "BIG file");
  app->add_option("--builtin", f.builtin, "thompson1990 | table4-bigs");
  app->add_flag("--directed", f.directed, "read the edge list as directed");
  app->add_option("--values", f.values, "'grid y' lines for ACS on an edge list");
  app->add_option("--threshold", f.threshold, "ACS threshold (y > threshold triggers expansion)");
  app->add_option("--motif", f.motifs, "motif class: k1 k2 s2 k3 k4 c4 s3 p3 component:<n>");
  app->add_option("--rule", f.rule,
                  "full:<T> | motif_only | motif_plus:<t> | acs_b | acs_bstar | acs_bdagger");
  app->add_option("--t", f.t, "t for motif_plus");
  app->add_option("--stages", f.stages, "T for full, or the table4-bigs panel");
  app->add_option("--format", f.format, "csv | json");
  app->add_option("--out", f.out, "output path (default stdout)");
}

void add_design_flags(CLI::App* app, Flags& f) {
  app->add_option("--design", f.design, "srswor | file");
  app->add_option("--n", f.n, "SRSWOR sample size");
  app->add_option("--design-file", f.design_file, "enumerated design, lines 'p: unit unit ...'");
  app->add_option("--estimator", f.estimators, "ht | hh | modified_ht | rb_ht | rb_modified_ht");
  app->add_option("--weights", f.weights, "equal | inv_alpha | weights file");
  app->add_option("--scale", f.scale, "total | mean");
  app->add_option("--cap", f.cap, "largest design support to enumerate");
}

template <typename T>
void apply(std::optional<T>& target, const std::optional<T>& flag) {
  if (flag) target = flag;
}

template <typename T>
void apply(T& target, const std::optional<T>& flag) {
  if (flag) target = *flag;
}

bigs::ExperimentConfig to_config(const std::string& command, const std::string& action,
                                 const Flags& f) {
  bigs::ExperimentConfig c;
  if (!f.config.empty()) c = bigs::load_config(f.config);
  c.command = command;
  if (command == "big") c.action = action;
  apply(c.graph, f.graph);
  apply(c.big, f.big);
  apply(c.builtin, f.builtin);
  if (f.directed) c.directed = true;
  apply(c.values, f.values);
  apply(c.threshold, f.threshold);
  if (!f.motifs.empty()) c.motifs = f.motifs;
  apply(c.rule, f.rule);
  apply(c.t, f.t);
  apply(c.stages, f.stages);
  apply(c.design, f.design);
  apply(c.n, f.n);
  apply(c.design_file, f.design_file);
  if (!f.estimators.empty()) c.estimators = f.estimators;
  if (!f.weights.empty()) c.weights = f.weights;
  apply(c.scale, f.scale);
  apply(c.seed, f.seed);
  apply(c.replicates, f.replicates);
  apply(c.threads, f.threads);
  if (!f.s0.empty()) c.s0 = f.s0;
  apply(c.cap, f.cap);
  apply(c.format, f.format);
  apply(c.out, f.out);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite incidence graph sampling: BIG construction, inclusion probabilities "
               "and HT / HH-type estimation"};
  app.set_version_flag("--version", std::string(bigs::kVersion));
  app.require_subcommand(1);

  Flags f;
  std::string big_action = "build";

  auto* motifs = app.add_subcommand("motifs", "enumerate motifs with their diameters");
  add_input_flags(motifs, f);

  auto* big = app.add_subcommand("big", "build, check or export a BIG");
  big->add_option("action", big_action, "build | check | export")
      ->check(CLI::IsMember({"build", "check", "export"}));
  add_input_flags(big, f);
  add_design_flags(big, f);

  auto* sample = app.add_subcommand("sample", "one realisation with its estimates");
  add_input_flags(sample, f);
  add_design_flags(sample, f);
  sample->add_option("--s0", f.s0, "initial sample (frame unit labels); drawn when omitted");
  sample->add_option("--seed", f.seed, "RNG seed for the draw");

  auto* enumerate = app.add_subcommand("enumerate", "exact moments over the whole design");
  add_input_flags(enumerate, f);
  add_design_flags(enumerate, f);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo moments");
  add_input_flags(simulate, f);
  add_design_flags(simulate, f);
  simulate->add_option("--seed", f.seed, "RNG seed (generated and recorded when omitted)");
  simulate->add_option("--replicates", f.replicates, "number of replicates");
  simulate->add_option("--threads", f.threads, "worker threads (0 = all cores)");

  auto* reproduce = app.add_subcommand("reproduce", "built-in worked examples");
  std::string builtin_name;
  reproduce->add_option("name", builtin_name, "thompson1990 | table4-bigs")->required();
  reproduce->add_option("--scale", f.scale, "total | mean");
  reproduce->add_option("--format", f.format, "csv | json");
  reproduce->add_option("--out", f.out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == reproduce) f.builtin = builtin_name;
    const bigs::ExperimentConfig config = to_config(chosen->get_name(), big_action, f);
    return bigs::run(config, std::cout, std::cerr);
  } catch (const bigs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bigs::kExitUsage;
  }
}
