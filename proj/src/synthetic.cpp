#include "sarf/synthetic.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace sarf::synthetic {

namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

std::size_t digits(std::size_t n) { return std::to_string(n > 0 ? n - 1 : 0).size(); }

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("SARF_KIT_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  return (end != nullptr && *end == '\0') ? v : fallback;
}

PlantedGraph planted_partition(std::size_t communities, std::size_t size, double p_in,
                               double p_out, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> names;
  std::vector<std::size_t> community;
  std::vector<std::set<std::string>> groups(communities);
  for (std::size_t c = 0; c < communities; ++c) {
    for (std::size_t i = 0; i < size; ++i) {
      names.push_back("g" + padded(c, digits(communities)) + "v" + padded(i, digits(size)));
      community.push_back(c);
      groups[c].insert(names.back());
    }
  }
  PlantedGraph out;
  for (const auto& n : names) out.graph.add_vertex(n);
  for (std::size_t u = 0; u < names.size(); ++u) {
    for (std::size_t v = 0; v < names.size(); ++v) {
      if (u == v) continue;
      if (rng.bernoulli(community[u] == community[v] ? p_in : p_out)) {
        out.graph.add_edge(names[u], names[v], 1.0);
      }
    }
  }
  out.planted = Decomposition::from_groups(groups);
  return out;
}

WeightedDigraph with_omnipresent_sink(const WeightedDigraph& g, const std::string& name) {
  WeightedDigraph out = g;
  for (const auto& v : g.vertices()) out.add_edge(v, name, 1.0);
  return out;
}

WeightedDigraph rewire(const WeightedDigraph& g, double fraction, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VertexPair> edges;
  for (const auto& [e, _] : g.edges()) edges.push_back(e);
  const std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(edges.size())));

  std::set<VertexPair> present(edges.begin(), edges.end());
  std::set<VertexPair> removed;
  while (removed.size() < count && removed.size() < edges.size()) {
    removed.insert(edges[rng.below(edges.size())]);
  }
  for (const auto& e : removed) present.erase(e);
  std::size_t added = 0;
  while (added < removed.size()) {
    const auto& u = names[rng.below(names.size())];
    const auto& v = names[rng.below(names.size())];
    if (u == v || g.has_edge(u, v) || !present.insert({u, v}).second) continue;
    ++added;
  }
  WeightedDigraph out;
  for (const auto& v : names) out.add_vertex(v);
  for (const auto& [u, v] : present) out.add_edge(u, v, 1.0);
  return out;
}

WeightedDigraph random_digraph(std::size_t n, double p, std::uint64_t seed, bool weighted) {
  Rng rng(seed);
  WeightedDigraph g;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("v" + padded(i, digits(n)));
    g.add_vertex(names.back());
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !rng.bernoulli(p)) continue;
      g.add_edge(names[u], names[v], weighted ? 1.0 - rng.uniform() : 1.0);
    }
  }
  return g;
}

MemberGraph random_member_graph(std::size_t modules, std::size_t max_members, double p,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MemberRef> refs;
  MemberGraph g;
  for (std::size_t m = 0; m < modules; ++m) {
    const std::string module = "M" + padded(m, digits(modules));
    g.add_module(module);
    const std::size_t count = 1 + rng.below(max_members);
    for (std::size_t k = 0; k < count; ++k) {
      refs.push_back({module, "f" + std::to_string(k)});
      g.add_member(module, refs.back().member);
    }
  }
  for (const auto& s : refs) {
    for (const auto& t : refs) {
      if (s.module != t.module && rng.bernoulli(p)) g.add_edge(s, t);
    }
  }
  return g;
}

Decomposition random_partition(std::size_t n, std::size_t max_blocks, Rng& rng) {
  std::vector<std::set<std::string>> blocks(std::max<std::size_t>(1, max_blocks));
  for (std::size_t i = 0; i < n; ++i) {
    blocks[rng.below(blocks.size())].insert("m" + std::to_string(i));
  }
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return Decomposition::from_groups(blocks);
}

}  // namespace sarf::synthetic
