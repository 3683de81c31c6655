#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sarf/decomposition.hpp"
#include "sarf/graph.hpp"

namespace sarf {

/// Gains closer than this are treated as equal when picking a merge, and a
/// division whose gain is above -kGainTolerance counts as non-negative.
inline constexpr double kGainTolerance = 1e-12;

/// Directed weighted modularity
///   Q = (1/W) sum_{i,j} [A_ij - k_out(i) k_in(j) / W] delta(c_i, c_j).
/// Throws DomainError when `d` does not partition g's vertices or W = 0.
double modularity(const WeightedDigraph& g, const Decomposition& d);

/// Aggregated cluster view of a weighted digraph. Clusters live in slots;
/// merging two slots keeps the smaller one.
class ClusterState {
 public:
  /// Weights between two clusters in both directions.
  struct Link {
    double forward = 0.0;   // e(i, j)
    double backward = 0.0;  // e(j, i)
  };

  /// One slot per vertex, in lexicographic vertex order.
  static ClusterState singletons(const WeightedDigraph& g);
  /// One slot per cluster of `d`, in cluster-name order.
  static ClusterState from_decomposition(const WeightedDigraph& g, const Decomposition& d);

  std::size_t slot_count() const { return a_out_.size(); }
  std::size_t live_count() const { return live_count_; }
  bool live(std::size_t i) const { return i < live_.size() && live_[i]; }

  double total_weight() const { return total_weight_; }
  double a_out(std::size_t i) const { return a_out_.at(i); }
  double a_in(std::size_t i) const { return a_in_.at(i); }
  /// e(i, j); for i == j the weight internal to cluster i.
  double e(std::size_t i, std::size_t j) const;
  const std::map<std::size_t, Link>& links(std::size_t i) const { return links_.at(i); }

  /// Change of modularity if clusters i and j were merged.
  double merge_gain(std::size_t i, std::size_t j) const;
  /// Merges i and j; returns the surviving slot, min(i, j).
  std::size_t merge(std::size_t i, std::size_t j);
  double modularity() const;

 private:
  explicit ClusterState(std::size_t slots);
  void check_pair(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t cs, std::size_t ct, double weight);

  double total_weight_ = 0.0;
  std::vector<double> a_out_;
  std::vector<double> a_in_;
  std::vector<double> internal_;
  std::vector<std::map<std::size_t, Link>> links_;
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
};

double merge_gain(const ClusterState& s, std::size_t i, std::size_t j);

struct MergeRecord {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t into = 0;
  /// Modularity of the whole decomposition right after this merge.
  double q_after = 0.0;

  bool operator==(const MergeRecord&) const = default;
};

/// Binary merge tree. Leaves are nodes 0..n-1 (vertices in lexicographic
/// order); the k-th merge creates node n + k.
struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<MergeRecord> merges;

  std::size_t node_count() const { return leaves.size() + merges.size(); }
  std::size_t root() const { return node_count() - 1; }
  /// Leaf names under `node`, sorted.
  std::set<std::string> members(std::size_t node) const;

  bool operator==(const Dendrogram&) const = default;
};

/// Greedy agglomeration: starting from singletons, repeatedly merges the
/// pair with the largest modularity gain until one cluster remains.
Dendrogram agglomerate(const WeightedDigraph& g);

/// Top-down division of the dendrogram: a cluster is replaced by its two
/// children while doing so does not lower modularity.
Decomposition flat_cut(const Dendrogram& dendrogram, const WeightedDigraph& g);

struct ClusteringResult {
  /// The graph that was actually clustered (after weighting).
  WeightedDigraph weighted;
  Dendrogram dendrogram;
  Decomposition decomposition;
};

/// Normalize, weight by multi-level Dedication, agglomerate, cut.
ClusteringResult cluster_sarf(const MemberGraph& g,
                              char nesting_separator = kDefaultNestingSeparator);
/// Module-level input: weight by simple Dedication, agglomerate, cut.
ClusteringResult cluster_sarf(const WeightedDigraph& g);

/// Baseline without Dedication: unit weights, agglomerate, cut.
ClusteringResult cluster_newman_unweighted(const WeightedDigraph& g);
ClusteringResult cluster_newman_unweighted(const MemberGraph& g,
                                           char nesting_separator = kDefaultNestingSeparator);

inline constexpr std::size_t kBruteForceVertexLimit = 10;

/// Exhaustive search over all set partitions of the vertices (at most
/// kBruteForceVertexLimit). Ties keep the lexicographically least labeling.
std::pair<Decomposition, double> brute_force_best_partition(const WeightedDigraph& g);

}  // namespace sarf
