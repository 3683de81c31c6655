#include <doctest.h>

#include "oracles.hpp"
#include "sarf/dedication.hpp"
#include "sarf/error.hpp"
#include "sarf/synthetic.hpp"

using namespace sarf;

namespace {

/// B = {m1, m2}; a1 -> m1, a2 -> m1 (a1, a2 in A); c1 -> m2 (c1 in C).
MemberGraph two_sources_graph() {
  MemberGraph g;
  g.add_edge({"A", "a1"}, {"B", "m1"});
  g.add_edge({"A", "a2"}, {"B", "m1"});
  g.add_edge({"C", "c1"}, {"B", "m2"});
  return g;
}

}  // namespace

TEST_CASE("dedication_simple divides by the target's fan-in") {
  const WeightedDigraph d = dedication_simple(parse_class_graph("A\tB\nC\tB\nA\tC\n"));
  CHECK(d.weight("A", "B") == 0.5);
  CHECK(d.weight("C", "B") == 0.5);
  CHECK(d.weight("A", "C") == 1.0);

  CHECK(dedication_simple(parse_class_graph("A\tB\n")).weight("A", "B") == 1.0);

  WeightedDigraph star;
  for (int i = 1; i <= 10; ++i) star.add_edge("X" + std::to_string(i), "B");
  const WeightedDigraph ds = dedication_simple(star);
  for (const auto& [e, w] : ds.edges()) CHECK(w == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(ds.vertices() == star.vertices());
}

TEST_CASE("dedication_terms enumerates M_AB, xfanin and mx") {
  const MemberGraph g = two_sources_graph();
  const DedicationTerms ab = dedication_terms(g, "A", "B");
  CHECK(ab.members_depended == std::set<std::string>{"m1"});
  CHECK(ab.external_fanin.at("m1") == 2);
  CHECK(ab.externally_depended_count == 2);

  const DedicationTerms cb = dedication_terms(g, "C", "B");
  CHECK(cb.members_depended == std::set<std::string>{"m2"});
  CHECK(cb.external_fanin.at("m2") == 1);
  CHECK(cb.externally_depended_count == 2);

  MemberGraph minimal;
  minimal.add_edge({"A", "a"}, {"B", "m"});
  const DedicationTerms t = dedication_terms(minimal, "A", "B");
  CHECK(t.members_depended == std::set<std::string>{"m"});
  CHECK(t.external_fanin.at("m") == 1);
  CHECK(t.externally_depended_count == 1);

  CHECK_THROWS_AS(dedication_terms(g, "B", "A"), DomainError);
  CHECK_THROWS_AS(dedication_terms(g, "A", "A"), DomainError);
}

TEST_CASE("dedication_multilevel evaluates the member-level formula") {
  const WeightedDigraph d = dedication_multilevel(two_sources_graph());
  CHECK(d.weight("A", "B") == 0.25);  // 1 / (2 * 2)
  CHECK(d.weight("C", "B") == 0.5);   // 1 / (1 * 2)
  CHECK(d.vertices() == lift(two_sources_graph()).vertices());

  MemberGraph single;
  single.add_edge({"A", "a"}, {"B", "m"});
  CHECK(dedication_multilevel(single).weight("A", "B") == 1.0);
}

TEST_CASE("the virtual member counts like any other member") {
  MemberGraph g;
  g.add_edge({"A", "a"}, {"B", std::string(kVirtualMember)});
  g.add_edge({"C", "c"}, {"B", "m"});
  const WeightedDigraph d = dedication_multilevel(g);
  CHECK(d.weight("A", "B") == 0.5);
  CHECK(d.weight("C", "B") == 0.5);
}

TEST_CASE("property: multi-level Dedication matches direct enumeration") {
  const std::uint64_t base = synthetic::seed_from_env(7);
  for (std::uint64_t k = 0; k < 30; ++k) {
    const MemberGraph g = normalize(synthetic::random_member_graph(9, 4, 0.06, base + k));
    const WeightedDigraph d = dedication_multilevel(g);
    CHECK(d.vertices() == lift(g).vertices());
    for (const auto& [e, w] : d.edges()) {
      CHECK(w == doctest::Approx(oracle::multilevel_dedication(g, e.first, e.second)).epsilon(1e-12));
      CHECK(w > 0.0);
      CHECK(w <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("property: simple Dedication sums to one per target") {
  const std::uint64_t base = synthetic::seed_from_env(11);
  for (std::uint64_t k = 0; k < 30; ++k) {
    const WeightedDigraph g = synthetic::random_digraph(15, 0.2, base + k);
    const WeightedDigraph d = dedication_simple(g);
    std::map<std::string, double> into;
    for (const auto& [e, w] : d.edges()) {
      CHECK(w == oracle::simple_dedication(g, e.second));
      into[e.second] += w;
    }
    for (const auto& [_, s] : into) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("property: a new dependent strictly dilutes existing Dedication") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WeightedDigraph g = synthetic::random_digraph(10, 0.25, seed);
    const WeightedDigraph before = dedication_simple(g);
    for (const auto& target : g.vertices()) {
      if (g.fanin(target) == 0) continue;
      WeightedDigraph grown = g;
      grown.add_edge("newcomer", target);
      const WeightedDigraph after = dedication_simple(grown);
      for (const auto& [e, w] : before.edges()) {
        if (e.second == target) CHECK(after.weight(e.first, target) < w);
      }
    }
  }
}

TEST_CASE("multi-level bound reaches one when dependents sit in distinct modules") {
  // Every external dependent of B is the only member of its own module.
  MemberGraph g;
  g.add_edge({"A", "a"}, {"B", "m1"});
  g.add_edge({"C", "c"}, {"B", "m1"});
  g.add_edge({"D", "d"}, {"B", "m2"});
  const WeightedDigraph d = dedication_multilevel(g);
  const double sum = d.weight("A", "B") + d.weight("C", "B") + d.weight("D", "B");
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // Two members of A depend on the same member of B: the sum drops below one.
  const WeightedDigraph s = dedication_multilevel(two_sources_graph());
  CHECK(s.weight("A", "B") + s.weight("C", "B") == 0.75);
}
