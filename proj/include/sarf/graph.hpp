#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sarf {

/// Member token standing for the module itself; type references target it.
inline constexpr std::string_view kVirtualMember = "<class>";

inline constexpr char kDefaultNestingSeparator = '$';

enum class DependencyKind { kInvoke, kFieldRead, kFieldWrite, kInherit, kTypeRef };

struct MemberRef {
  std::string module;
  std::string member;

  auto operator<=>(const MemberRef&) const = default;
};

struct MemberEdge {
  MemberRef source;
  MemberRef target;

  bool cross_module() const { return source.module != target.module; }
  auto operator<=>(const MemberEdge&) const = default;
};

/// Two-level dependency graph: modules own members, edges run between
/// members. Endpoints are declared implicitly when an edge is added.
class MemberGraph {
 public:
  void add_module(const std::string& module);
  void add_member(const std::string& module, const std::string& member);
  void add_edge(const MemberRef& source, const MemberRef& target);

  const std::map<std::string, std::set<std::string>>& members() const { return members_; }
  const std::set<MemberEdge>& edges() const { return edges_; }

  std::vector<std::string> modules() const;
  bool has_module(const std::string& module) const { return members_.contains(module); }
  std::size_t member_count() const;

  bool operator==(const MemberGraph&) const = default;

 private:
  std::map<std::string, std::set<std::string>> members_;
  std::set<MemberEdge> edges_;
};

using VertexPair = std::pair<std::string, std::string>;

/// Module-level directed graph with strictly positive edge weights. Vertices
/// and edges are kept in lexicographic order.
class WeightedDigraph {
 public:
  void add_vertex(const std::string& v);
  /// Adds `weight` to edge (source, target), creating it if absent.
  void add_edge(const std::string& source, const std::string& target, double weight = 1.0);

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::map<VertexPair, double>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(const std::string& source, const std::string& target) const;
  double weight(const std::string& source, const std::string& target) const;

  /// Number of distinct in-edges of v.
  std::size_t fanin(const std::string& v) const;
  std::map<std::string, std::size_t> fanins() const;
  double out_weight(const std::string& v) const;
  double in_weight(const std::string& v) const;
  /// Sum of all edge weights, accumulated in canonical edge order.
  double total_weight() const;

  /// Same vertices and edges, every weight replaced by 1.
  WeightedDigraph unweighted() const;

  bool operator==(const WeightedDigraph&) const = default;

 private:
  std::set<std::string> vertices_;
  std::map<VertexPair, double> edges_;
};

/// module -> dot-separated package path
class PackageMap {
 public:
  void assign(const std::string& module, const std::string& package);

  const std::map<std::string, std::string>& assignment() const { return assignment_; }
  std::size_t size() const { return assignment_.size(); }
  bool empty() const { return assignment_.empty(); }
  /// package path -> modules directly assigned to it
  std::map<std::string, std::set<std::string>> packages() const;

 private:
  std::map<std::string, std::string> assignment_;
};

DependencyKind parse_dependency_kind(std::string_view text);
std::string_view to_string(DependencyKind kind);

MemberGraph parse_member_graph(std::string_view text);
WeightedDigraph parse_class_graph(std::string_view text);
PackageMap parse_package_map(std::string_view text);

/// Canonical member-edge TSV. Edges into the virtual member are written as
/// `typeref`, all others as `invoke`.
std::string write_member_graph(const MemberGraph& g);
/// Canonical module-edge TSV: sorted rows, weights with 9 significant digits.
std::string write_class_graph(const WeightedDigraph& g);
std::string write_package_map(const PackageMap& p);

/// Folds nested modules into their outermost module and drops intra-module
/// and duplicate edges.
MemberGraph normalize(const MemberGraph& g, char nesting_separator = kDefaultNestingSeparator);

/// Module-level graph with a unit edge wherever some member of A depends on
/// some member of B (A != B). Modules without cross-module edges are dropped.
WeightedDigraph lift(const MemberGraph& g);

/// Number of columns of the first non-comment, non-blank line (0 if none).
std::size_t leading_column_count(std::string_view text);

}  // namespace sarf
