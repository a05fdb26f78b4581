#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bigs/design.hpp"
#include "bigs/errors.hpp"
#include "bigs/motif.hpp"
#include "bigs/runner.hpp"
#include "bigs/version.hpp"

namespace py = pybind11;
using namespace bigs;

namespace {

Graph graph_from(const std::vector<std::pair<std::string, std::string>>& edges,
                 const std::vector<std::string>& nodes, bool directed) {
  Graph g(directed);
  for (const auto& n : nodes) g.add_node(n);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

std::vector<NodeIndex> indices(const Graph& g, const std::vector<std::string>& labels) {
  std::vector<NodeIndex> out;
  for (const auto& l : labels) out.push_back(g.index_of(l));
  std::sort(out.begin(), out.end());
  return out;
}

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_exact_string(r));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ValueError);
  py::register_exception<EnumerationCapError>(m, "EnumerationCapError", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  m.def(
      "run_json",
      [](const std::string& config) {
        const Report r = build_report(ExperimentConfig::from_json(nlohmann::json::parse(config)));
        std::ostringstream out;
        write_json(out, r);
        return out.str();
      },
      py::arg("config"), "Run one experiment from a JSON config and return the JSON report.");

  m.def(
      "enumerate_motifs",
      [](const std::vector<std::pair<std::string, std::string>>& edges, const std::string& cls,
         const std::vector<std::string>& nodes, bool directed) {
        const Graph g = graph_from(edges, nodes, directed);
        std::vector<std::vector<std::string>> out;
        for (const auto& motif : bigs::enumerate_motifs(g, MotifClass::parse(cls)).motifs) {
          std::vector<std::string> labels;
          for (NodeIndex i : motif.members) labels.push_back(g.label(i));
          out.push_back(std::move(labels));
        }
        return out;
      },
      py::arg("edges"), py::arg("motif_class"), py::arg("nodes") = std::vector<std::string>{},
      py::arg("directed") = false);

  m.def(
      "observation_distance",
      [](const std::vector<std::pair<std::string, std::string>>& edges,
         const std::vector<std::string>& members, const std::string& seed,
         const std::vector<std::string>& nodes, bool directed) -> py::object {
        const Graph g = graph_from(edges, nodes, directed);
        const Distance d = ObservationDistances(g)(indices(g, members), g.index_of(seed));
        if (!d.is_finite()) return py::none();
        return py::int_(d.hops());
      },
      py::arg("edges"), py::arg("members"), py::arg("seed"),
      py::arg("nodes") = std::vector<std::string>{}, py::arg("directed") = false,
      "Snowball stages needed from {seed} to observe the motif, None if never.");

  m.def(
      "srswor_inclusion",
      [](std::size_t N, std::size_t n, std::size_t ancestors) {
        std::vector<std::size_t> units(ancestors);
        for (std::size_t i = 0; i < ancestors; ++i) units[i] = i;
        return fraction(1 - Design::srswor(N, n).exclusion_probability(units));
      },
      py::arg("N"), py::arg("n"), py::arg("ancestors"),
      "Probability that SRSWOR(N, n) hits a given set of `ancestors` units.");
}
