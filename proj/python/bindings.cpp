// Python bindings for the sarfkit core library.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sarf/clustering.hpp"
#include "sarf/dedication.hpp"
#include "sarf/distmap.hpp"
#include "sarf/error.hpp"
#include "sarf/graph.hpp"
#include "sarf/io.hpp"
#include "sarf/metrics.hpp"
#include "sarf/synthetic.hpp"

namespace py = pybind11;

namespace {

sarf::PackageMap to_package_map(const std::map<std::string, std::string>& assignment) {
  sarf::PackageMap p;
  for (const auto& [module, package] : assignment) p.assign(module, package);
  return p;
}

char to_separator(const std::string& s) {
  if (s.size() != 1) throw py::value_error("separator must be a single character");
  return s.front();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
    Dependency-graph clustering with Dedication-weighted directed modularity,
    plus MoJo-family, NED, stability and occupancy measures.
  )pbdoc";

  auto error = py::register_exception<sarf::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<sarf::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<sarf::NormalizationError>(m, "NormalizationError", error.ptr());
  py::register_exception<sarf::DomainError>(m, "DomainError", error.ptr());

  // -- graphs ---------------------------------------------------------------
  py::class_<sarf::MemberGraph>(m, "MemberGraph")
      .def(py::init<>())
      .def("add_edge",
           [](sarf::MemberGraph& g, const std::string& sm, const std::string& s,
              const std::string& tm, const std::string& t) { g.add_edge({sm, s}, {tm, t}); },
           py::arg("source_module"), py::arg("source_member"), py::arg("target_module"),
           py::arg("target_member"))
      .def("modules", &sarf::MemberGraph::modules)
      .def("members", &sarf::MemberGraph::members)
      .def("edges",
           [](const sarf::MemberGraph& g) {
             std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
             for (const auto& e : g.edges()) {
               out.emplace_back(e.source.module, e.source.member, e.target.module,
                                e.target.member);
             }
             return out;
           })
      .def("__eq__", [](const sarf::MemberGraph& a, const sarf::MemberGraph& b) { return a == b; });

  py::class_<sarf::WeightedDigraph>(m, "WeightedDigraph")
      .def(py::init<>())
      .def("add_vertex", &sarf::WeightedDigraph::add_vertex)
      .def("add_edge", &sarf::WeightedDigraph::add_edge, py::arg("source"), py::arg("target"),
           py::arg("weight") = 1.0)
      .def("vertices", &sarf::WeightedDigraph::vertices)
      .def("edges", &sarf::WeightedDigraph::edges)
      .def("weight", &sarf::WeightedDigraph::weight)
      .def("fanin", &sarf::WeightedDigraph::fanin)
      .def("total_weight", &sarf::WeightedDigraph::total_weight)
      .def("__len__", &sarf::WeightedDigraph::vertex_count)
      .def("__eq__",
           [](const sarf::WeightedDigraph& a, const sarf::WeightedDigraph& b) { return a == b; });

  m.def("parse_member_graph", &sarf::parse_member_graph, py::arg("text"));
  m.def("parse_class_graph", &sarf::parse_class_graph, py::arg("text"));
  m.def("parse_package_map",
        [](std::string_view text) { return sarf::parse_package_map(text).assignment(); },
        py::arg("text"));
  m.def("write_member_graph", &sarf::write_member_graph);
  m.def("write_class_graph", &sarf::write_class_graph);
  m.def("normalize",
        [](const sarf::MemberGraph& g, const std::string& sep) {
          return sarf::normalize(g, to_separator(sep));
        },
        py::arg("graph"), py::arg("separator") = "$");
  m.def("lift", &sarf::lift);

  // -- dedication -------------------------------------------------------------
  m.def("dedication_simple", &sarf::dedication_simple);
  m.def("dedication_multilevel", &sarf::dedication_multilevel);
  m.def("dedication_terms",
        [](const sarf::MemberGraph& g, const std::string& a, const std::string& b) {
          const auto t = sarf::dedication_terms(g, a, b);
          py::dict d;
          d["members_depended"] = t.members_depended;
          d["external_fanin"] = t.external_fanin;
          d["externally_depended_count"] = t.externally_depended_count;
          return d;
        },
        py::arg("graph"), py::arg("source"), py::arg("target"));

  // -- clustering -------------------------------------------------------------
  py::class_<sarf::Decomposition>(m, "Decomposition")
      .def(py::init<std::map<std::string, std::set<std::string>>>(), py::arg("clusters"))
      .def_static("from_groups", &sarf::Decomposition::from_groups)
      .def_property_readonly("clusters", &sarf::Decomposition::clusters)
      .def_property_readonly("universe", &sarf::Decomposition::universe)
      .def("cluster_count", &sarf::Decomposition::cluster_count)
      .def("cluster_of", &sarf::Decomposition::cluster_of)
      .def("restricted_to", &sarf::Decomposition::restricted_to)
      .def("same_partition", &sarf::Decomposition::same_partition)
      .def("to_json", &sarf::decomposition_to_json)
      .def_static("from_json", &sarf::decomposition_from_json)
      .def("__len__", &sarf::Decomposition::universe_size)
      .def("__eq__", [](const sarf::Decomposition& a, const sarf::Decomposition& b) { return a == b; })
      .def("__repr__", [](const sarf::Decomposition& d) {
        return "<Decomposition " + std::to_string(d.cluster_count()) + " clusters over " +
               std::to_string(d.universe_size()) + " modules>";
      });

  py::class_<sarf::Dendrogram>(m, "Dendrogram")
      .def_readonly("leaves", &sarf::Dendrogram::leaves)
      .def_property_readonly("merges",
                             [](const sarf::Dendrogram& d) {
                               std::vector<std::tuple<std::size_t, std::size_t, std::size_t, double>> out;
                               for (const auto& r : d.merges) {
                                 out.emplace_back(r.left, r.right, r.into, r.q_after);
                               }
                               return out;
                             })
      .def("members", &sarf::Dendrogram::members)
      .def("to_json", &sarf::dendrogram_to_json);

  py::class_<sarf::ClusteringResult>(m, "ClusteringResult")
      .def_readonly("weighted", &sarf::ClusteringResult::weighted)
      .def_readonly("dendrogram", &sarf::ClusteringResult::dendrogram)
      .def_readonly("decomposition", &sarf::ClusteringResult::decomposition);

  m.def("modularity", &sarf::modularity, py::arg("graph"), py::arg("decomposition"));
  m.def("agglomerate", &sarf::agglomerate);
  m.def("flat_cut", &sarf::flat_cut, py::arg("dendrogram"), py::arg("graph"));
  m.def("cluster_sarf",
        [](const sarf::MemberGraph& g, const std::string& sep) {
          return sarf::cluster_sarf(g, to_separator(sep));
        },
        py::arg("graph"), py::arg("separator") = "$");
  m.def("cluster_sarf", py::overload_cast<const sarf::WeightedDigraph&>(&sarf::cluster_sarf),
        py::arg("graph"));
  m.def("cluster_newman_unweighted",
        py::overload_cast<const sarf::WeightedDigraph&>(&sarf::cluster_newman_unweighted),
        py::arg("graph"));
  m.def("brute_force_best_partition", &sarf::brute_force_best_partition);

  // -- metrics ----------------------------------------------------------------
  m.def("mno", &sarf::mno, py::arg("source"), py::arg("target"));
  m.def("mno_brute_force", &sarf::mno_brute_force, py::arg("source"), py::arg("target"));
  m.def("mojo", &sarf::mojo);
  m.def("mojosim", &sarf::mojosim);
  m.def("max_mno", &sarf::max_mno);
  m.def("mojofm", &sarf::mojofm, py::arg("computed"), py::arg("authoritative"));
  m.def("ned", &sarf::ned);
  m.def("stability",
        [](const std::vector<std::pair<std::string, sarf::Decomposition>>& versions) {
          sarf::VersionSeries series;
          for (const auto& [label, d] : versions) series.push_back({label, d});
          std::vector<double> values;
          for (const auto& s : sarf::stability(series)) values.push_back(s.value);
          return values;
        },
        py::arg("versions"));
  m.def("occupancy",
        [](const std::map<std::string, std::string>& p) { return sarf::occupancy(to_package_map(p)); },
        py::arg("packages"));
  m.def("auth_decomposition",
        [](const std::map<std::string, std::string>& p, std::size_t threshold) {
          return sarf::auth_decomposition(to_package_map(p), threshold);
        },
        py::arg("packages"), py::arg("threshold") = sarf::kDefaultAuthThreshold);

  // -- reports ----------------------------------------------------------------
  m.def("distribution_map_svg",
        [](const sarf::Decomposition& computed, const sarf::Decomposition& reference) {
          return sarf::DistributionMap::build(computed, reference).to_svg();
        });
  m.def("distribution_map_text",
        [](const sarf::Decomposition& computed, const sarf::Decomposition& reference) {
          return sarf::DistributionMap::build(computed, reference).to_text();
        });

  m.def("planted_partition",
        [](std::size_t communities, std::size_t size, double p_in, double p_out,
           std::uint64_t seed) {
          auto pg = sarf::synthetic::planted_partition(communities, size, p_in, p_out, seed);
          return py::make_tuple(pg.graph, pg.planted);
        },
        py::arg("communities"), py::arg("size"), py::arg("p_in"), py::arg("p_out"),
        py::arg("seed"));
}
