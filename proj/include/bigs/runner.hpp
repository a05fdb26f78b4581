#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bigs/design.hpp"
#include "bigs/report.hpp"

namespace bigs {

/// One experiment. Loaded from a JSON object whose keys match the field
/// names; command-line flags override individual fields.
struct ExperimentConfig {
  std::string command;           // motifs | big | sample | enumerate | simulate | reproduce
  std::string action = "build";  // big: build | check | export

  std::optional<std::string> graph;    // edge-list path
  std::optional<std::string> big;      // BIG file path
  std::optional<std::string> builtin;  // thompson1990 | table4-bigs
  bool directed = false;
  std::optional<std::string> values;     // "label y" lines for ACS on an edge list
  std::optional<std::string> threshold;  // ACS threshold, exact

  std::vector<std::string> motifs;  // motif class names
  std::optional<std::string> rule;
  std::optional<int> t;
  std::optional<int> stages;

  std::string design = "srswor";  // srswor | file
  std::optional<std::size_t> n;
  std::optional<std::string> design_file;

  std::vector<std::string> estimators;  // ht hh modified_ht rb_ht rb_modified_ht
  std::vector<std::string> weights;     // equal | inv_alpha | <weights file>
  std::optional<std::string> scale;     // total | mean

  std::optional<std::uint64_t> seed;
  std::uint64_t replicates = 10000;
  unsigned threads = 0;
  std::vector<std::string> s0;  // frame unit labels
  std::uint64_t cap = kDefaultEnumerationCap;

  std::string format = "csv";  // csv | json
  std::optional<std::string> out;

  nlohmann::json to_json() const;
  /// Throws ArgumentError on unknown keys or wrong value types.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// Applies every key present in `j` on top of this config.
  void merge_json(const nlohmann::json& j);
};

ExperimentConfig load_config(const std::string& path);

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Builds the report for `config`. Throws bigs::Error subclasses on
/// invalid input; the report carries the seed actually used.
Report build_report(const ExperimentConfig& config);

/// Runs the experiment and writes its output to config.out, or to `out`
/// when no path is set. Diagnostics go to `err`. Returns kExitInfeasible
/// on infeasible representations or failed feasibility checks, kExitUsage
/// on configuration and input errors.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bigs
