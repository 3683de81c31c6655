#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sarf/decomposition.hpp"

namespace sarf {

inline constexpr std::array<std::string_view, 20> kDistributionPalette = {
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8",
    "#800000", "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080"};

/// Letter code of the i-th cluster: A..Z, AA..AZ, BA, ...
std::string cluster_code(std::size_t index);

struct DistributionCell {
  std::string module;
  std::string cluster;
  std::string code;
  std::string_view color;
};

struct DistributionGroup {
  std::string name;
  std::vector<DistributionCell> cells;  // sorted by module
};

/// Reference groups (sorted by name), each listing its modules colored by
/// the computed cluster they fall in. Codes and colors follow sorted
/// computed-cluster names; colors cycle every 20 clusters.
struct DistributionMap {
  std::vector<DistributionGroup> groups;

  /// Both decompositions must cover the same modules (DomainError otherwise).
  static DistributionMap build(const Decomposition& computed, const Decomposition& reference);

  std::string to_svg() const;
  /// One line per group: "<group>: <code> <code> ...".
  std::string to_text() const;
};

}  // namespace sarf
