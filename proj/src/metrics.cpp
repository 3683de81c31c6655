#include "sarf/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>

#include "sarf/error.hpp"
#include "sarf/partitions.hpp"

namespace sarf {

namespace {

/// A partition of {0..n-1}: label per element plus the number of blocks.
struct Labeling {
  std::vector<std::size_t> label;
  std::size_t blocks = 0;
};

void require_same_universe(const Decomposition& x, const Decomposition& y) {
  if (x.universe() != y.universe()) {
    throw DomainError("decompositions cover different module sets (" +
                      std::to_string(x.universe_size()) + " vs " +
                      std::to_string(y.universe_size()) + " modules)");
  }
}

/// Labels follow cluster-name order; elements follow universe order.
Labeling labeling_of(const Decomposition& d) {
  std::map<std::string, std::size_t> index;
  std::size_t i = 0;
  for (const auto& m : d.universe()) index.emplace(m, i++);
  Labeling out{std::vector<std::size_t>(d.universe_size(), 0), d.cluster_count()};
  std::size_t c = 0;
  for (const auto& [_, members] : d.clusters()) {
    for (const auto& m : members) out.label[index.at(m)] = c;
    ++c;
  }
  return out;
}

/// Each source cluster is tagged with a target cluster. Objects that differ
/// from their cluster's tag are moved, and clusters sharing a tag are
/// joined. The optimum tags every cluster with a target of maximal overlap
/// and maximizes the number of distinct tags, which is a maximum bipartite
/// matching over the maximal-overlap edges:
///   mno = N + |from| - sum_i max_t |from_i & to_t| - matching.
std::size_t mno_core(const Labeling& from, const Labeling& to) {
  const std::size_t n = from.label.size();
  const std::size_t cols = to.blocks;
  std::vector<std::size_t> overlap(from.blocks * cols, 0);
  for (std::size_t e = 0; e < n; ++e) ++overlap[from.label[e] * cols + to.label[e]];

  std::size_t kept = 0;
  std::vector<std::size_t> best(from.blocks, 0);
  for (std::size_t i = 0; i < from.blocks; ++i) {
    for (std::size_t t = 0; t < cols; ++t) best[i] = std::max(best[i], overlap[i * cols + t]);
    kept += best[i];
  }

  // Kuhn's augmenting paths over the edges (i, t) with overlap == best[i].
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(cols, kFree);
  std::vector<std::size_t> seen(cols, kFree);
  auto augment = [&](auto&& self, std::size_t i, std::size_t round) -> bool {
    for (std::size_t t = 0; t < cols; ++t) {
      if (overlap[i * cols + t] != best[i] || seen[t] == round) continue;
      seen[t] = round;
      if (owner[t] == kFree || self(self, owner[t], round)) {
        owner[t] = i;
        return true;
      }
    }
    return false;
  };
  std::size_t matched = 0;
  for (std::size_t i = 0; i < from.blocks; ++i) matched += augment(augment, i, i);

  return n + from.blocks - kept - matched;
}

/// Restricted-growth form, packed 4 bits per element.
std::uint64_t encode(const std::vector<std::uint8_t>& labels) {
  std::uint64_t code = 0;
  for (std::uint8_t l : labels) code = (code << 4) | l;
  return code;
}

std::vector<std::uint8_t> canonical(const std::vector<std::uint8_t>& labels) {
  std::uint8_t remap[16];
  std::fill(std::begin(remap), std::end(remap), std::uint8_t{0xff});
  std::uint8_t next = 0;
  std::vector<std::uint8_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (remap[labels[i]] == 0xff) remap[labels[i]] = next++;
    out[i] = remap[labels[i]];
  }
  return out;
}

}  // namespace

std::size_t mno(const Decomposition& from, const Decomposition& to) {
  require_same_universe(from, to);
  return mno_core(labeling_of(from), labeling_of(to));
}

std::size_t mno_brute_force(const Decomposition& from, const Decomposition& to) {
  require_same_universe(from, to);
  const std::size_t n = from.universe_size();
  if (n > kMnoBruteForceLimit) {
    throw DomainError("brute-force mno refused for " + std::to_string(n) + " modules (limit " +
                      std::to_string(kMnoBruteForceLimit) + ")");
  }
  auto small = [](const Labeling& l) {
    std::vector<std::uint8_t> out(l.label.begin(), l.label.end());
    return canonical(out);
  };
  const auto start = small(labeling_of(from));
  const std::uint64_t goal = encode(small(labeling_of(to)));

  std::unordered_map<std::uint64_t, std::size_t> distance{{encode(start), 0}};
  std::deque<std::vector<std::uint8_t>> queue{start};
  while (!queue.empty()) {
    const auto state = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = distance.at(encode(state));
    if (encode(state) == goal) return d;

    const std::uint8_t blocks =
        state.empty() ? 0 : static_cast<std::uint8_t>(*std::max_element(state.begin(), state.end()) + 1);
    std::vector<std::size_t> size(blocks, 0);
    for (auto l : state) ++size[l];

    std::vector<std::vector<std::uint8_t>> next;
    // Move one element to another block or to a fresh one.
    for (std::size_t e = 0; e < n; ++e) {
      for (std::uint8_t b = 0; b <= blocks; ++b) {
        if (b == state[e] || (b == blocks && size[state[e]] == 1)) continue;
        auto s = state;
        s[e] = b;
        next.push_back(canonical(s));
      }
    }
    // Join two blocks.
    for (std::uint8_t x = 0; x < blocks; ++x) {
      for (std::uint8_t y = x + 1; y < blocks; ++y) {
        auto s = state;
        for (auto& l : s) {
          if (l == y) l = x;
        }
        next.push_back(canonical(s));
      }
    }
    for (auto& s : next) {
      if (distance.emplace(encode(s), d + 1).second) queue.push_back(std::move(s));
    }
  }
  throw Error("mno search exhausted without reaching the target");
}

std::size_t mojo(const Decomposition& c, const Decomposition& a) {
  return std::min(mno(c, a), mno(a, c));
}

double mojosim_from_counts(std::size_t mojo_value, std::size_t n) {
  if (n == 0) throw DomainError("MoJoSim undefined for an empty universe");
  return (1.0 - static_cast<double>(mojo_value) / static_cast<double>(n)) * 100.0;
}

double mojosim(const Decomposition& c, const Decomposition& a) {
  return mojosim_from_counts(mojo(c, a), c.universe_size());
}

std::size_t max_mno_exhaustive(const Decomposition& a) {
  const std::size_t n = a.universe_size();
  if (n > kMaxMnoExhaustiveLimit) {
    throw DomainError("exhaustive max mno refused for " + std::to_string(n) + " modules");
  }
  const Labeling target = labeling_of(a);
  Labeling candidate{std::vector<std::size_t>(n, 0), 0};
  std::size_t best = 0;
  for_each_set_partition(n, [&](const std::vector<int>& labels, int blocks) {
    for (std::size_t i = 0; i < n; ++i) candidate.label[i] = static_cast<std::size_t>(labels[i]);
    candidate.blocks = static_cast<std::size_t>(blocks);
    best = std::max(best, mno_core(candidate, target));
  });
  return best;
}

std::size_t max_mno_from_sizes(const Decomposition& a) {
  std::vector<std::size_t> sizes;
  for (const auto& [_, members] : a.clusters()) sizes.push_back(members.size());
  std::sort(sizes.rbegin(), sizes.rend());
  sizes.push_back(0);
  std::size_t least = sizes.front();
  for (std::size_t q = 1; q < sizes.size(); ++q) least = std::min(least, q + sizes[q]);
  return a.universe_size() - least;
}

std::size_t max_mno(const Decomposition& a) {
  if (a.universe_size() <= kMaxMnoExhaustiveLimit) return max_mno_exhaustive(a);
  return max_mno_from_sizes(a);
}

double mojofm_from_counts(std::size_t mno_value, std::size_t max_mno_value) {
  if (max_mno_value == 0) throw DomainError("MoJoFM undefined: maximum mno is 0");
  return (1.0 - static_cast<double>(mno_value) / static_cast<double>(max_mno_value)) * 100.0;
}

double mojofm(const Decomposition& c, const Decomposition& a) {
  return mojofm_from_counts(mno(c, a), max_mno(a));
}

double ned(const Decomposition& c) {
  const std::size_t n = c.universe_size();
  if (n == 0) throw DomainError("NED undefined for an empty universe");
  const double upper = std::max(20.0, static_cast<double>(n) / 5.0);
  std::size_t covered = 0;
  for (const auto& [_, members] : c.clusters()) {
    const std::size_t s = members.size();
    if (s >= 5 && static_cast<double>(s) <= upper) covered += s;
  }
  return static_cast<double>(covered) / static_cast<double>(n);
}

std::vector<StabilityStep> stability(const VersionSeries& series) {
  if (series.size() < 2) throw DomainError("stability needs at least two versions");
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      if (series[i].label == series[j].label) {
        throw DomainError("duplicate version label '" + series[i].label + "'");
      }
    }
  }
  std::vector<StabilityStep> steps;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const auto& prev = series[i - 1];
    const auto& curr = series[i];
    std::set<std::string> shared;
    std::set_intersection(prev.decomposition.universe().begin(),
                          prev.decomposition.universe().end(),
                          curr.decomposition.universe().begin(),
                          curr.decomposition.universe().end(),
                          std::inserter(shared, shared.end()));
    if (shared.empty()) {
      throw DomainError("versions '" + prev.label + "' and '" + curr.label +
                        "' share no modules");
    }
    const double value =
        mojosim(prev.decomposition.restricted_to(shared), curr.decomposition.restricted_to(shared));
    steps.push_back({prev.label, curr.label, shared.size(), value});
  }
  return steps;
}

double mean_stability(const std::vector<StabilityStep>& steps) {
  if (steps.empty()) throw DomainError("no stability transitions to average");
  double sum = 0.0;
  for (const auto& s : steps) sum += s.value;
  return sum / static_cast<double>(steps.size());
}

double occupancy(const PackageMap& p) {
  if (p.empty()) throw DomainError("occupancy undefined for an empty package map");
  std::size_t largest = 0;
  for (const auto& [_, modules] : p.packages()) largest = std::max(largest, modules.size());
  return 100.0 * static_cast<double>(largest) / static_cast<double>(p.size());
}

Decomposition auth_decomposition(const PackageMap& p, std::size_t threshold) {
  auto clusters = p.packages();
  auto depth = [](const std::string& path) { return std::count(path.begin(), path.end(), '.'); };
  for (;;) {
    const std::string* pick = nullptr;
    for (const auto& [path, modules] : clusters) {
      if (modules.size() > threshold || depth(path) == 0) continue;
      // Map order is lexicographic, so the first hit at the deepest level wins.
      if (pick == nullptr || depth(path) > depth(*pick)) pick = &path;
    }
    if (pick == nullptr) break;
    const std::string path = *pick;
    const std::string parent = path.substr(0, path.rfind('.'));
    auto node = clusters.extract(path);
    clusters[parent].merge(node.mapped());
  }
  return Decomposition(std::move(clusters));
}

std::vector<std::string> default_measures() { return {"mojofm", "mojosim", "ned", "k"}; }

bool is_known_measure(const std::string& name) {
  static const std::set<std::string> known{"mojofm", "mojosim", "mojo", "mno",
                                           "max_mno", "ned",     "k",    "n"};
  return known.contains(name);
}

MetricReport evaluate(const Decomposition& computed, const Decomposition& reference,
                      const std::vector<std::string>& measures) {
  require_same_universe(computed, reference);
  MetricReport r;
  for (const auto& m : measures) {
    if (m == "mojofm") {
      r.mojofm_value = mojofm(computed, reference);
    } else if (m == "mojosim") {
      r.mojosim_value = mojosim(computed, reference);
    } else if (m == "mojo") {
      r.mojo_value = mojo(computed, reference);
    } else if (m == "mno") {
      r.mno_value = mno(computed, reference);
    } else if (m == "max_mno") {
      r.max_mno_value = max_mno(reference);
    } else if (m == "ned") {
      r.ned_value = ned(computed);
    } else if (m == "k") {
      r.clusters = computed.cluster_count();
      r.reference_clusters = reference.cluster_count();
    } else if (m == "n") {
      r.universe_size = computed.universe_size();
    } else {
      throw DomainError("unknown measure '" + m + "'");
    }
  }
  return r;
}

}  // namespace sarf
