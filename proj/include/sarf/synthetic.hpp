#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "sarf/decomposition.hpp"
#include "sarf/graph.hpp"

namespace sarf::synthetic {

/// mt19937_64 with hand-rolled draws so sequences are identical on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// Value of SARF_KIT_SEED when set and numeric, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

struct PlantedGraph {
  WeightedDigraph graph;
  Decomposition planted;
};

/// Directed planted-partition graph with unit weights. Vertex names are
/// "g<community>v<index>", zero-padded so that names sort by community.
PlantedGraph planted_partition(std::size_t communities, std::size_t size, double p_in,
                               double p_out, std::uint64_t seed);

/// Adds `name` with an edge from every existing vertex.
WeightedDigraph with_omnipresent_sink(const WeightedDigraph& g, const std::string& name);

/// Replaces round(fraction * |E|) edges by new random unit edges absent from
/// the graph.
WeightedDigraph rewire(const WeightedDigraph& g, double fraction, std::uint64_t seed);

/// Random digraph on n vertices "v0".."v{n-1}"; every ordered pair gets an
/// edge with probability p. Weights are 1, or uniform in (0, 1] when
/// `weighted`. Isolated vertices are kept.
WeightedDigraph random_digraph(std::size_t n, double p, std::uint64_t seed, bool weighted = false);

/// Random member graph: `modules` modules with 1..max_members members each
/// and cross-module member edges with probability p.
MemberGraph random_member_graph(std::size_t modules, std::size_t max_members, double p,
                                std::uint64_t seed);

/// Random partition of {"m0", ..., "m{n-1}"} into at most `max_blocks` blocks.
Decomposition random_partition(std::size_t n, std::size_t max_blocks, Rng& rng);

}  // namespace sarf::synthetic
