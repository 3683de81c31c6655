#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "sarf/graph.hpp"

namespace sarf {

/// Ingredients of the multi-level Dedication of edge (A, B).
struct DedicationTerms {
  /// B's members that some member of A depends on.
  std::set<std::string> members_depended;
  /// For each member of B depended on from outside B: the number of
  /// members outside B depending on it.
  std::map<std::string, std::size_t> external_fanin;
  /// Number of B's members depended on by at least one external member.
  std::size_t externally_depended_count = 0;
};

/// Re-weights every edge (A, B) to 1 / fanin(B).
WeightedDigraph dedication_simple(const WeightedDigraph& g);

/// Throws DomainError unless some member of `source` depends on a member of
/// `target` (source != target). Expects a normalized graph.
DedicationTerms dedication_terms(const MemberGraph& g, const std::string& source,
                                 const std::string& target);

/// Lifts a normalized member graph and weights each module edge (A, B) by
///   sum over m in M_AB of 1 / (xfanin(m) * mx(B)).
WeightedDigraph dedication_multilevel(const MemberGraph& g);

}  // namespace sarf
