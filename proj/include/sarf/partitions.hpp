#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace sarf {

/// Calls visit(labels, block_count) for every set partition of {0..n-1},
/// encoded as a restricted growth string, in lexicographic order of the
/// string. There are Bell(n) of them; callers bound n.
template <typename Visit>
void for_each_set_partition(std::size_t n, Visit&& visit) {
  if (n == 0) {
    const std::vector<int> none;
    visit(none, 0);
    return;
  }
  std::vector<int> labels(n, 0);
  std::vector<int> prefix_max(n, 0);  // max label over labels[0..i]
  for (;;) {
    visit(static_cast<const std::vector<int>&>(labels), prefix_max[n - 1] + 1);
    // Rightmost position that can still be incremented.
    std::size_t i = n - 1;
    while (i > 0 && labels[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

}  // namespace sarf
