#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sarf {

/// A partition of a set of module identifiers into named, non-empty,
/// pairwise disjoint clusters.
class Decomposition {
 public:
  Decomposition() = default;
  /// Throws DomainError on empty or overlapping clusters.
  explicit Decomposition(std::map<std::string, std::set<std::string>> clusters);

  /// Names the groups C1, C2, ... ordered by their smallest member.
  static Decomposition from_groups(const std::vector<std::set<std::string>>& groups);
  static Decomposition single_cluster(const std::set<std::string>& universe,
                                      const std::string& name = "C1");
  static Decomposition singletons(const std::set<std::string>& universe);

  const std::map<std::string, std::set<std::string>>& clusters() const { return clusters_; }
  const std::set<std::string>& universe() const { return universe_; }
  std::size_t universe_size() const { return universe_.size(); }
  std::size_t cluster_count() const { return clusters_.size(); }
  /// Name of the cluster holding `module`; throws DomainError if absent.
  const std::string& cluster_of(const std::string& module) const;

  /// Drops modules outside `keep` and any cluster left empty.
  Decomposition restricted_to(const std::set<std::string>& keep) const;

  /// Cluster contents without names, in canonical order.
  std::vector<std::set<std::string>> groups() const;
  /// True when both induce the same partition; names are ignored.
  bool same_partition(const Decomposition& other) const;

  bool operator==(const Decomposition&) const = default;

 private:
  std::map<std::string, std::set<std::string>> clusters_;
  std::set<std::string> universe_;
  std::map<std::string, std::string> owner_;
};

}  // namespace sarf
