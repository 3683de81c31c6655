#include "sarf/graph.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sarf/error.hpp"
#include "tsv.hpp"

namespace sarf {

// ---------------------------------------------------------------------------
// MemberGraph

void MemberGraph::add_module(const std::string& module) { members_[module]; }

void MemberGraph::add_member(const std::string& module, const std::string& member) {
  members_[module].insert(member);
}

void MemberGraph::add_edge(const MemberRef& source, const MemberRef& target) {
  add_member(source.module, source.member);
  add_member(target.module, target.member);
  edges_.insert(MemberEdge{source, target});
}

std::vector<std::string> MemberGraph::modules() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& [module, _] : members_) out.push_back(module);
  return out;
}

std::size_t MemberGraph::member_count() const {
  std::size_t n = 0;
  for (const auto& [_, ms] : members_) n += ms.size();
  return n;
}

// ---------------------------------------------------------------------------
// WeightedDigraph

void WeightedDigraph::add_vertex(const std::string& v) { vertices_.insert(v); }

void WeightedDigraph::add_edge(const std::string& source, const std::string& target,
                               double weight) {
  if (source == target) throw DomainError("self-edge on vertex '" + source + "'");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw DomainError("edge weight must be positive and finite");
  }
  vertices_.insert(source);
  vertices_.insert(target);
  edges_[{source, target}] += weight;
}

bool WeightedDigraph::has_edge(const std::string& source, const std::string& target) const {
  return edges_.contains({source, target});
}

double WeightedDigraph::weight(const std::string& source, const std::string& target) const {
  auto it = edges_.find({source, target});
  return it == edges_.end() ? 0.0 : it->second;
}

std::size_t WeightedDigraph::fanin(const std::string& v) const {
  std::size_t n = 0;
  for (const auto& [e, _] : edges_) n += (e.second == v);
  return n;
}

std::map<std::string, std::size_t> WeightedDigraph::fanins() const {
  std::map<std::string, std::size_t> out;
  for (const auto& v : vertices_) out[v] = 0;
  for (const auto& [e, _] : edges_) ++out[e.second];
  return out;
}

double WeightedDigraph::out_weight(const std::string& v) const {
  double s = 0.0;
  for (const auto& [e, w] : edges_) {
    if (e.first == v) s += w;
  }
  return s;
}

double WeightedDigraph::in_weight(const std::string& v) const {
  double s = 0.0;
  for (const auto& [e, w] : edges_) {
    if (e.second == v) s += w;
  }
  return s;
}

double WeightedDigraph::total_weight() const {
  double s = 0.0;
  for (const auto& [_, w] : edges_) s += w;
  return s;
}

WeightedDigraph WeightedDigraph::unweighted() const {
  WeightedDigraph out;
  out.vertices_ = vertices_;
  for (const auto& [e, _] : edges_) out.edges_.emplace(e, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// PackageMap

void PackageMap::assign(const std::string& module, const std::string& package) {
  auto [it, inserted] = assignment_.emplace(module, package);
  if (!inserted && it->second != package) {
    throw DomainError("module '" + module + "' assigned to both '" + it->second + "' and '" +
                      package + "'");
  }
}

std::map<std::string, std::set<std::string>> PackageMap::packages() const {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [module, package] : assignment_) out[package].insert(module);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr std::pair<std::string_view, DependencyKind> kKindNames[] = {
    {"invoke", DependencyKind::kInvoke},       {"field_read", DependencyKind::kFieldRead},
    {"field_write", DependencyKind::kFieldWrite}, {"inherit", DependencyKind::kInherit},
    {"typeref", DependencyKind::kTypeRef},
};

void require_nonempty(const detail::TsvRow& row, std::initializer_list<std::size_t> columns) {
  for (std::size_t c : columns) {
    if (row.fields[c].empty()) {
      throw ParseError(row.line, "empty field in column " + std::to_string(c + 1));
    }
  }
}

}  // namespace

DependencyKind parse_dependency_kind(std::string_view text) {
  for (const auto& [name, kind] : kKindNames) {
    if (name == text) return kind;
  }
  throw ParseError(0, "unknown dependency kind '" + std::string(text) + "'");
}

std::string_view to_string(DependencyKind kind) {
  for (const auto& [name, k] : kKindNames) {
    if (k == kind) return name;
  }
  return "invoke";
}

MemberGraph parse_member_graph(std::string_view text) {
  MemberGraph g;
  for (const auto& row : detail::split_tsv(text)) {
    if (row.fields.size() != 5) {
      throw ParseError(row.line, "expected 5 columns, got " + std::to_string(row.fields.size()));
    }
    require_nonempty(row, {0, 1, 2, 3, 4});
    DependencyKind kind;
    try {
      kind = parse_dependency_kind(row.fields[4]);
    } catch (const ParseError& e) {
      throw ParseError(row.line, e.what());
    }
    MemberRef source{std::string(row.fields[0]), std::string(row.fields[1])};
    MemberRef target{std::string(row.fields[2]), std::string(row.fields[3])};
    if (kind == DependencyKind::kTypeRef) target.member = std::string(kVirtualMember);
    g.add_edge(source, target);
  }
  return g;
}

WeightedDigraph parse_class_graph(std::string_view text) {
  WeightedDigraph g;
  for (const auto& row : detail::split_tsv(text)) {
    if (row.fields.size() != 2 && row.fields.size() != 3) {
      throw ParseError(row.line,
                       "expected 2 or 3 columns, got " + std::to_string(row.fields.size()));
    }
    require_nonempty(row, {0, 1});
    double weight = 1.0;
    if (row.fields.size() == 3) {
      std::string_view w = row.fields[2];
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        throw ParseError(row.line, "invalid weight '" + std::string(w) + "'");
      }
      if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ParseError(row.line, "weight must be positive, got '" + std::string(w) + "'");
      }
    }
    if (row.fields[0] == row.fields[1]) {
      throw ParseError(row.line, "self-edge on '" + std::string(row.fields[0]) + "'");
    }
    g.add_edge(std::string(row.fields[0]), std::string(row.fields[1]), weight);
  }
  return g;
}

PackageMap parse_package_map(std::string_view text) {
  PackageMap p;
  for (const auto& row : detail::split_tsv(text)) {
    if (row.fields.size() != 2) {
      throw ParseError(row.line, "expected 2 columns, got " + std::to_string(row.fields.size()));
    }
    require_nonempty(row, {0, 1});
    std::string_view path = row.fields[1];
    if (path.front() == '.' || path.back() == '.' || path.find("..") != std::string_view::npos) {
      throw ParseError(row.line, "malformed package path '" + std::string(path) + "'");
    }
    try {
      p.assign(std::string(row.fields[0]), std::string(path));
    } catch (const DomainError& e) {
      throw ParseError(row.line, e.what());
    }
  }
  return p;
}

std::size_t leading_column_count(std::string_view text) {
  auto rows = detail::split_tsv(text);
  return rows.empty() ? 0 : rows.front().fields.size();
}

// ---------------------------------------------------------------------------
// Writers

std::string write_member_graph(const MemberGraph& g) {
  std::ostringstream out;
  for (const auto& e : g.edges()) {
    const bool typeref = e.target.member == kVirtualMember;
    out << e.source.module << '\t' << e.source.member << '\t' << e.target.module << '\t'
        << e.target.member << '\t' << (typeref ? "typeref" : "invoke") << '\n';
  }
  return out.str();
}

std::string write_class_graph(const WeightedDigraph& g) {
  std::ostringstream out;
  char buf[64];
  for (const auto& [e, w] : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.9g", w);
    out << e.first << '\t' << e.second << '\t' << buf << '\n';
  }
  return out.str();
}

std::string write_package_map(const PackageMap& p) {
  std::ostringstream out;
  for (const auto& [module, package] : p.assignment()) out << module << '\t' << package << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Normalization and lifting

MemberGraph normalize(const MemberGraph& g, char nesting_separator) {
  // Original (module, member) -> re-homed (module, member).
  std::map<MemberRef, MemberRef> rehome;
  std::map<MemberRef, std::vector<MemberRef>> claimed;
  MemberGraph out;
  for (const auto& [module, members] : g.members()) {
    const auto sep = module.find(nesting_separator);
    if (sep == 0) {
      throw NormalizationError("module '" + module + "' has an empty outer name");
    }
    const bool nested = sep != std::string::npos;
    const std::string outer = nested ? module.substr(0, sep) : module;
    const std::string prefix = nested ? module.substr(sep + 1) + nesting_separator : "";
    out.add_module(outer);
    for (const auto& member : members) {
      MemberRef from{module, member};
      MemberRef to{outer, prefix + member};
      claimed[to].push_back(from);
      rehome.emplace(std::move(from), std::move(to));
    }
  }

  std::string collisions;
  for (const auto& [to, sources] : claimed) {
    if (sources.size() < 2) continue;
    if (!collisions.empty()) collisions += "; ";
    collisions += to.module + "." + to.member + " <- ";
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (i) collisions += ", ";
      collisions += sources[i].module + "." + sources[i].member;
    }
  }
  if (!collisions.empty()) {
    throw NormalizationError("member identifiers collide after merging nested modules: " +
                             collisions);
  }

  for (const auto& [to, _] : claimed) out.add_member(to.module, to.member);
  for (const auto& e : g.edges()) {
    const MemberRef& s = rehome.at(e.source);
    const MemberRef& t = rehome.at(e.target);
    if (s.module == t.module) continue;
    out.add_edge(s, t);
  }
  return out;
}

WeightedDigraph lift(const MemberGraph& g) {
  WeightedDigraph out;
  for (const auto& e : g.edges()) {
    if (!e.cross_module() || out.has_edge(e.source.module, e.target.module)) continue;
    out.add_edge(e.source.module, e.target.module, 1.0);
  }
  return out;
}

}  // namespace sarf
