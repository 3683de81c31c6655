#include "sarf/dedication.hpp"

#include <utility>

#include "sarf/error.hpp"

namespace sarf {

WeightedDigraph dedication_simple(const WeightedDigraph& g) {
  const auto fanin = g.fanins();
  WeightedDigraph out;
  for (const auto& v : g.vertices()) out.add_vertex(v);
  for (const auto& [e, _] : g.edges()) {
    out.add_edge(e.first, e.second, 1.0 / static_cast<double>(fanin.at(e.second)));
  }
  return out;
}

namespace {

/// External fan-in of every member that has at least one cross-module
/// dependent, keyed by (module, member). Edges are unique, so counting
/// cross-module edges into a member counts distinct external dependents.
std::map<MemberRef, std::size_t> external_fanins(const MemberGraph& g) {
  std::map<MemberRef, std::size_t> xfanin;
  for (const auto& e : g.edges()) {
    if (e.cross_module()) ++xfanin[e.target];
  }
  return xfanin;
}

}  // namespace

DedicationTerms dedication_terms(const MemberGraph& g, const std::string& source,
                                 const std::string& target) {
  if (source == target) throw DomainError("dedication terms need two distinct modules");
  DedicationTerms terms;
  for (const auto& e : g.edges()) {
    if (!e.cross_module() || e.target.module != target) continue;
    ++terms.external_fanin[e.target.member];
    if (e.source.module == source) terms.members_depended.insert(e.target.member);
  }
  if (terms.members_depended.empty()) {
    throw DomainError("no member of '" + source + "' depends on a member of '" + target + "'");
  }
  terms.externally_depended_count = terms.external_fanin.size();
  return terms;
}

WeightedDigraph dedication_multilevel(const MemberGraph& g) {
  const auto xfanin = external_fanins(g);
  std::map<std::string, std::size_t> mx;
  for (const auto& [ref, _] : xfanin) ++mx[ref.module];

  std::map<VertexPair, std::set<std::string>> depended;
  for (const auto& e : g.edges()) {
    if (e.cross_module()) depended[{e.source.module, e.target.module}].insert(e.target.member);
  }

  WeightedDigraph out;
  for (const auto& [pair, members] : depended) {
    const std::size_t mx_target = mx.at(pair.second);
    double weight = 0.0;
    for (const auto& m : members) {
      const std::size_t x = xfanin.at(MemberRef{pair.second, m});
      weight += 1.0 / static_cast<double>(x * mx_target);
    }
    out.add_edge(pair.first, pair.second, weight);
  }
  return out;
}

}  // namespace sarf
