#include "sarf/clustering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "sarf/dedication.hpp"
#include "sarf/error.hpp"
#include "sarf/partitions.hpp"

namespace sarf {

namespace {

struct IndexedEdge {
  std::size_t source;
  std::size_t target;
  double weight;
};

/// Vertices numbered by lexicographic rank; edges in canonical order.
struct IndexedGraph {
  std::vector<std::string> names;
  std::vector<IndexedEdge> edges;
  double total_weight = 0.0;

  std::size_t index_of(const std::string& name) const {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    return static_cast<std::size_t>(it - names.begin());
  }
};

IndexedGraph index_graph(const WeightedDigraph& g) {
  IndexedGraph ig;
  ig.names.assign(g.vertices().begin(), g.vertices().end());
  ig.edges.reserve(g.edge_count());
  for (const auto& [e, w] : g.edges()) {
    ig.edges.push_back({ig.index_of(e.first), ig.index_of(e.second), w});
    ig.total_weight += w;
  }
  return ig;
}

struct Aggregates {
  std::vector<double> a_out;
  std::vector<double> a_in;
  std::vector<double> internal;
};

/// Per-label aggregates summed from scratch in canonical edge order.
Aggregates aggregate(const IndexedGraph& ig, const std::vector<std::size_t>& label,
                     std::size_t label_count) {
  Aggregates agg{std::vector<double>(label_count, 0.0), std::vector<double>(label_count, 0.0),
                 std::vector<double>(label_count, 0.0)};
  for (const auto& e : ig.edges) {
    const std::size_t cs = label[e.source];
    const std::size_t ct = label[e.target];
    agg.a_out[cs] += e.weight;
    agg.a_in[ct] += e.weight;
    if (cs == ct) agg.internal[cs] += e.weight;
  }
  return agg;
}

/// With a single cluster every aggregate equals W bit for bit, so the
/// result is exactly 0.
double modularity_from(const Aggregates& agg, double total_weight) {
  const double w2 = total_weight * total_weight;
  double q = 0.0;
  for (std::size_t c = 0; c < agg.internal.size(); ++c) {
    q += agg.internal[c] / total_weight - agg.a_out[c] * agg.a_in[c] / w2;
  }
  return q;
}

std::vector<std::size_t> labels_of(const IndexedGraph& ig, const Decomposition& d) {
  std::vector<std::size_t> label(ig.names.size(), 0);
  std::size_t c = 0;
  for (const auto& [_, members] : d.clusters()) {
    for (const auto& m : members) label[ig.index_of(m)] = c;
    ++c;
  }
  return label;
}

void require_partition_of(const WeightedDigraph& g, const Decomposition& d) {
  if (d.universe() != g.vertices()) {
    throw DomainError("decomposition does not partition the graph's vertex set");
  }
}

}  // namespace

double modularity(const WeightedDigraph& g, const Decomposition& d) {
  require_partition_of(g, d);
  const IndexedGraph ig = index_graph(g);
  if (!(ig.total_weight > 0.0)) throw DomainError("modularity undefined: graph has no edges");
  return modularity_from(aggregate(ig, labels_of(ig, d), d.cluster_count()), ig.total_weight);
}

// ---------------------------------------------------------------------------
// ClusterState

ClusterState::ClusterState(std::size_t slots)
    : a_out_(slots, 0.0),
      a_in_(slots, 0.0),
      internal_(slots, 0.0),
      links_(slots),
      live_(slots, true),
      live_count_(slots) {}

ClusterState ClusterState::singletons(const WeightedDigraph& g) {
  const IndexedGraph ig = index_graph(g);
  std::vector<std::size_t> label(ig.names.size());
  std::iota(label.begin(), label.end(), std::size_t{0});
  ClusterState s(label.size());
  for (const auto& e : ig.edges) s.add_edge(label[e.source], label[e.target], e.weight);
  s.total_weight_ = ig.total_weight;
  return s;
}

ClusterState ClusterState::from_decomposition(const WeightedDigraph& g, const Decomposition& d) {
  require_partition_of(g, d);
  const IndexedGraph ig = index_graph(g);
  const auto label = labels_of(ig, d);
  ClusterState s(d.cluster_count());
  for (const auto& e : ig.edges) s.add_edge(label[e.source], label[e.target], e.weight);
  s.total_weight_ = ig.total_weight;
  return s;
}

void ClusterState::add_edge(std::size_t cs, std::size_t ct, double weight) {
  a_out_[cs] += weight;
  a_in_[ct] += weight;
  if (cs == ct) {
    internal_[cs] += weight;
  } else {
    links_[cs][ct].forward += weight;
    links_[ct][cs].backward += weight;
  }
}

void ClusterState::check_pair(std::size_t i, std::size_t j) const {
  if (i == j) throw DomainError("cannot merge a cluster with itself");
  if (!live(i) || !live(j)) throw DomainError("merge of a cluster that no longer exists");
}

double ClusterState::e(std::size_t i, std::size_t j) const {
  if (i == j) return internal_.at(i);
  const auto& l = links_.at(i);
  auto it = l.find(j);
  return it == l.end() ? 0.0 : it->second.forward;
}

double ClusterState::merge_gain(std::size_t i, std::size_t j) const {
  check_pair(i, j);
  double between = 0.0;
  if (auto it = links_[i].find(j); it != links_[i].end()) {
    between = it->second.forward + it->second.backward;
  }
  const double expected = (a_out_[i] * a_in_[j] + a_out_[j] * a_in_[i]) / total_weight_;
  return (between - expected) / total_weight_;
}

std::size_t ClusterState::merge(std::size_t i, std::size_t j) {
  check_pair(i, j);
  const std::size_t keep = std::min(i, j);
  const std::size_t drop = std::max(i, j);

  if (auto it = links_[keep].find(drop); it != links_[keep].end()) {
    internal_[keep] += it->second.forward + it->second.backward;
    links_[keep].erase(it);
    links_[drop].erase(keep);
  }
  internal_[keep] += internal_[drop];
  a_out_[keep] += a_out_[drop];
  a_in_[keep] += a_in_[drop];

  for (const auto& [other, link] : links_[drop]) {
    Link& mine = links_[keep][other];
    mine.forward += link.forward;
    mine.backward += link.backward;
    auto& theirs = links_[other];
    theirs.erase(drop);
    Link& back = theirs[keep];
    back.forward += link.backward;
    back.backward += link.forward;
  }
  links_[drop].clear();
  a_out_[drop] = a_in_[drop] = internal_[drop] = 0.0;
  live_[drop] = false;
  --live_count_;
  return keep;
}

double ClusterState::modularity() const {
  const double w2 = total_weight_ * total_weight_;
  double q = 0.0;
  for (std::size_t c = 0; c < live_.size(); ++c) {
    if (live_[c]) q += internal_[c] / total_weight_ - a_out_[c] * a_in_[c] / w2;
  }
  return q;
}

double merge_gain(const ClusterState& s, std::size_t i, std::size_t j) {
  return s.merge_gain(i, j);
}

// ---------------------------------------------------------------------------
// Dendrogram

std::set<std::string> Dendrogram::members(std::size_t node) const {
  if (node >= node_count()) throw DomainError("dendrogram node out of range");
  std::set<std::string> out;
  std::vector<std::size_t> stack{node};
  const std::size_t n = leaves.size();
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x < n) {
      out.insert(leaves[x]);
    } else {
      stack.push_back(merges[x - n].left);
      stack.push_back(merges[x - n].right);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Agglomeration

namespace {

constexpr std::size_t kResyncInterval = 1024;
constexpr double kDriftLimit = 1e-6;

struct Candidate {
  double gain;
  std::size_t a;  // a < b
  std::size_t b;
  std::uint32_t version_a;
  std::uint32_t version_b;
};

/// Max-heap order: larger gain first, then the lexicographically least pair.
struct LowerPriority {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.gain != y.gain) return x.gain < y.gain;
    return std::tie(x.a, x.b) > std::tie(y.a, y.b);
  }
};

void check_drift(const ClusterState& state, const Aggregates& exact, double q_running,
                 double q_exact) {
  double drift = std::abs(q_running - q_exact);
  for (std::size_t c = 0; c < exact.a_out.size(); ++c) {
    if (!state.live(c)) continue;
    drift = std::max({drift, std::abs(state.a_out(c) - exact.a_out[c]),
                      std::abs(state.a_in(c) - exact.a_in[c]),
                      std::abs(state.e(c, c) - exact.internal[c])});
  }
  if (!(drift < kDriftLimit)) {
    throw Error("agglomeration aggregates drifted by " + std::to_string(drift));
  }
}

}  // namespace

Dendrogram agglomerate(const WeightedDigraph& g) {
  if (g.vertex_count() == 0) throw DomainError("cannot cluster an empty graph");
  const IndexedGraph ig = index_graph(g);
  if (!(ig.total_weight > 0.0)) throw DomainError("cannot cluster a graph without edges");

  const std::size_t n = ig.names.size();
  ClusterState state = ClusterState::singletons(g);
  Dendrogram dend;
  dend.leaves = ig.names;
  dend.merges.reserve(n - 1);

  std::vector<std::size_t> node_of(n);
  std::iota(node_of.begin(), node_of.end(), std::size_t{0});
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<std::uint32_t> version(n, 0);
  std::set<std::size_t> live_slots;
  for (std::size_t i = 0; i < n; ++i) live_slots.insert(i);

  std::priority_queue<Candidate, std::vector<Candidate>, LowerPriority> heap;
  auto push = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    heap.push({state.merge_gain(a, b), a, b, version[a], version[b]});
  };
  auto valid = [&](const Candidate& c) {
    return state.live(c.a) && state.live(c.b) && version[c.a] == c.version_a &&
           version[c.b] == c.version_b;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, _] : state.links(i)) {
      if (i < j) push(i, j);
    }
  }

  double q = modularity_from(aggregate(ig, label, n), ig.total_weight);
  // Once no two clusters share an edge, every remaining pair is a candidate.
  bool unconnected_phase = false;

  while (state.live_count() > 1) {
    while (!heap.empty() && !valid(heap.top())) heap.pop();
    if (heap.empty()) {
      unconnected_phase = true;
      for (auto it = live_slots.begin(); it != live_slots.end(); ++it) {
        for (auto jt = std::next(it); jt != live_slots.end(); ++jt) push(*it, *jt);
      }
      continue;
    }

    Candidate best = heap.top();
    heap.pop();
    const double top_gain = best.gain;
    std::vector<Candidate> stash;
    while (!heap.empty() && heap.top().gain >= top_gain - kGainTolerance) {
      Candidate c = heap.top();
      heap.pop();
      if (!valid(c)) continue;
      if (std::tie(c.a, c.b) < std::tie(best.a, best.b)) std::swap(c, best);
      stash.push_back(c);
    }
    for (const auto& c : stash) heap.push(c);

    const std::size_t keep = state.merge(best.a, best.b);
    const std::size_t drop = best.b;
    ++version[keep];
    live_slots.erase(drop);

    MergeRecord rec{node_of[keep], node_of[drop], n + dend.merges.size(), 0.0};
    node_of[keep] = rec.into;
    for (std::size_t v : members[drop]) label[v] = keep;
    members[keep].insert(members[keep].end(), members[drop].begin(), members[drop].end());
    members[drop] = {};

    q += best.gain;
    if ((dend.merges.size() + 1) % kResyncInterval == 0 || state.live_count() == 1) {
      const Aggregates exact = aggregate(ig, label, n);
      const double q_exact = modularity_from(exact, ig.total_weight);
      check_drift(state, exact, q, q_exact);
      q = q_exact;
    }
    rec.q_after = q;
    dend.merges.push_back(rec);

    if (unconnected_phase) {
      for (std::size_t other : live_slots) {
        if (other != keep) push(keep, other);
      }
    } else {
      for (const auto& [other, _] : state.links(keep)) push(keep, other);
    }
  }
  return dend;
}

// ---------------------------------------------------------------------------
// Flat cut

Decomposition flat_cut(const Dendrogram& dend, const WeightedDigraph& g) {
  const IndexedGraph ig = index_graph(g);
  const std::size_t n = ig.names.size();
  if (dend.leaves != ig.names || (n > 0 && dend.merges.size() != n - 1)) {
    throw DomainError("dendrogram was not built from this graph");
  }
  if (n == 0) return Decomposition();
  if (!(ig.total_weight > 0.0)) throw DomainError("cannot cut a graph without edges");

  const std::size_t nodes = dend.node_count();
  const std::size_t root = dend.root();
  std::vector<std::size_t> parent(nodes, root);
  std::vector<bool> consumed(nodes, false);
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const auto& m = dend.merges[k];
    const std::size_t id = n + k;
    if (m.into != id || m.left >= id || m.right >= id || m.left == m.right ||
        consumed[m.left] || consumed[m.right]) {
      throw DomainError("malformed dendrogram at merge " + std::to_string(k));
    }
    consumed[m.left] = consumed[m.right] = true;
    parent[m.left] = parent[m.right] = id;
  }

  std::vector<double> a_out(nodes, 0.0);
  std::vector<double> a_in(nodes, 0.0);
  for (const auto& e : ig.edges) {
    a_out[e.source] += e.weight;
    a_in[e.target] += e.weight;
  }
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const auto& m = dend.merges[k];
    a_out[n + k] = a_out[m.left] + a_out[m.right];
    a_in[n + k] = a_in[m.left] + a_in[m.right];
  }

  // Parents carry larger ids than their children, so one descending sweep
  // fills depths and one ascending sweep per level fills the lifting table.
  std::vector<std::size_t> depth(nodes, 0);
  for (std::size_t x = nodes - 1; x-- > 0;) depth[x] = depth[parent[x]] + 1;
  const std::size_t levels = std::max<std::size_t>(1, std::bit_width(nodes));
  std::vector<std::vector<std::size_t>> up(levels, parent);
  for (std::size_t j = 1; j < levels; ++j) {
    for (std::size_t x = 0; x < nodes; ++x) up[j][x] = up[j - 1][up[j - 1][x]];
  }
  auto lca = [&](std::size_t u, std::size_t v) {
    if (depth[u] < depth[v]) std::swap(u, v);
    for (std::size_t diff = depth[u] - depth[v], j = 0; diff; diff >>= 1, ++j) {
      if (diff & 1) u = up[j][u];
    }
    if (u == v) return u;
    for (std::size_t j = levels; j-- > 0;) {
      if (up[j][u] != up[j][v]) {
        u = up[j][u];
        v = up[j][v];
      }
    }
    return parent[u];
  };

  // Weight that becomes internal at each merge.
  std::vector<double> joined(nodes, 0.0);
  for (const auto& e : ig.edges) joined[lca(e.source, e.target)] += e.weight;

  const double w = ig.total_weight;
  std::vector<std::set<std::string>> groups;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x >= n) {
      const auto& m = dend.merges[x - n];
      const double expected =
          (a_out[m.left] * a_in[m.right] + a_out[m.right] * a_in[m.left]) / w;
      const double division_gain = (expected - joined[x]) / w;
      if (division_gain >= -kGainTolerance) {
        stack.push_back(m.right);
        stack.push_back(m.left);
        continue;
      }
    }
    groups.push_back(dend.members(x));
  }
  return Decomposition::from_groups(groups);
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

ClusteringResult run_pipeline(WeightedDigraph weighted) {
  ClusteringResult r;
  r.dendrogram = agglomerate(weighted);
  r.decomposition = flat_cut(r.dendrogram, weighted);
  r.weighted = std::move(weighted);
  return r;
}

}  // namespace

ClusteringResult cluster_sarf(const MemberGraph& g, char nesting_separator) {
  return run_pipeline(dedication_multilevel(normalize(g, nesting_separator)));
}

ClusteringResult cluster_sarf(const WeightedDigraph& g) {
  return run_pipeline(dedication_simple(g));
}

ClusteringResult cluster_newman_unweighted(const WeightedDigraph& g) {
  return run_pipeline(g.unweighted());
}

ClusteringResult cluster_newman_unweighted(const MemberGraph& g, char nesting_separator) {
  return run_pipeline(lift(normalize(g, nesting_separator)));
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

std::pair<Decomposition, double> brute_force_best_partition(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForceVertexLimit) {
    throw DomainError("brute-force partition search refused for " + std::to_string(n) +
                      " vertices (limit " + std::to_string(kBruteForceVertexLimit) + ")");
  }
  const IndexedGraph ig = index_graph(g);
  if (!(ig.total_weight > 0.0)) throw DomainError("modularity undefined: graph has no edges");

  std::vector<std::size_t> label(n);
  std::vector<int> best_labels;
  double best_q = 0.0;
  for_each_set_partition(n, [&](const std::vector<int>& labels, int blocks) {
    for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::size_t>(labels[i]);
    const double q = modularity_from(aggregate(ig, label, static_cast<std::size_t>(blocks)),
                                     ig.total_weight);
    if (best_labels.empty() || q > best_q + kGainTolerance) {
      best_q = q;
      best_labels = labels;
    }
  });

  const int blocks = n == 0 ? 0 : *std::max_element(best_labels.begin(), best_labels.end()) + 1;
  std::vector<std::set<std::string>> groups(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(best_labels[i])].insert(ig.names[i]);
  return {Decomposition::from_groups(groups), best_q};
}

}  // namespace sarf
