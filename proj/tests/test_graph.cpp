#include <doctest.h>

#include "sarf/error.hpp"
#include "sarf/graph.hpp"
#include "sarf/synthetic.hpp"

using namespace sarf;

TEST_CASE("parse_member_graph reads one edge per line") {
  const MemberGraph g = parse_member_graph("A\tf\tB\tg\tinvoke\n");
  REQUIRE(g.edges().size() == 1);
  const MemberEdge& e = *g.edges().begin();
  CHECK(e.source == MemberRef{"A", "f"});
  CHECK(e.target == MemberRef{"B", "g"});
  CHECK(g.modules() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("parse_member_graph collapses duplicate lines") {
  const MemberGraph g = parse_member_graph("A\tf\tB\tg\tinvoke\nA\tf\tB\tg\tinvoke\n");
  CHECK(g.edges().size() == 1);
}

TEST_CASE("type references target the virtual member") {
  const MemberGraph g = parse_member_graph("A\tf\tB\t<class>\ttyperef\n");
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges().begin()->target == MemberRef{"B", std::string(kVirtualMember)});

  // Whatever the member column says, a typeref lands on the virtual member.
  const MemberGraph h = parse_member_graph("A\tf\tB\tField\ttyperef\n");
  CHECK(h.edges().begin()->target.member == kVirtualMember);
  CHECK_FALSE(h.members().at("B").contains("Field"));
}

TEST_CASE("parse_member_graph skips comments, blank lines and CRLF endings") {
  const MemberGraph g = parse_member_graph(
      "# header\n\nA\tf\tB\tg\tfield_read\r\n  \nB\tg\tC\th\tinherit\n");
  CHECK(g.edges().size() == 2);
  CHECK(g.modules().size() == 3);
}

TEST_CASE("parse_member_graph errors name the line") {
  SUBCASE("wrong column count") {
    try {
      parse_member_graph("A\tf\tB\tg\tinvoke\nA\tf\tB\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("empty field") {
    CHECK_THROWS_AS(parse_member_graph("A\t\tB\tg\tinvoke\n"), ParseError);
  }
  SUBCASE("unknown kind") {
    try {
      parse_member_graph("# c\nA\tf\tB\tg\tcalls\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("calls") != std::string::npos);
    }
  }
}

TEST_CASE("normalize folds nested modules into the outermost one") {
  MemberGraph g;
  g.add_edge({"Outer$Inner", "m"}, {"Other", "x"});
  const MemberGraph n = normalize(g, '$');
  CHECK(n.members().at("Outer") == std::set<std::string>{"Inner$m"});
  CHECK_FALSE(n.has_module("Outer$Inner"));
  REQUIRE(n.edges().size() == 1);
  CHECK(n.edges().begin()->source == MemberRef{"Outer", "Inner$m"});

  SUBCASE("deeper nesting keeps the full suffix") {
    MemberGraph d;
    d.add_edge({"A$B$C", "m"}, {"X", "y"});
    CHECK(normalize(d).members().at("A") == std::set<std::string>{"B$C$m"});
  }
  SUBCASE("custom separator") {
    MemberGraph d;
    d.add_edge({"A.B", "m"}, {"X", "y"});
    CHECK(normalize(d, '.').has_module("A"));
  }
}

TEST_CASE("normalize drops intra-module edges, including ones created by folding") {
  MemberGraph g;
  g.add_edge({"A", "f"}, {"A", "g"});
  g.add_edge({"A$In", "h"}, {"A", "f"});
  g.add_edge({"A", "f"}, {"B", "g"});
  const MemberGraph n = normalize(g);
  CHECK(n.edges().size() == 1);
  CHECK(n.edges().begin()->target.module == "B");
  // Members whose edges vanished are still declared.
  CHECK(n.members().at("A").contains("In$h"));
}

TEST_CASE("normalize is the identity on already-normal graphs") {
  MemberGraph g;
  g.add_edge({"A", "f"}, {"B", "g"});
  g.add_edge({"B", "g"}, {"C", std::string(kVirtualMember)});
  CHECK(normalize(g) == g);
}

TEST_CASE("normalize reports colliding member identifiers") {
  MemberGraph g;
  g.add_edge({"Outer", "Inner$m"}, {"X", "a"});
  g.add_edge({"Outer$Inner", "m"}, {"X", "a"});
  try {
    normalize(g);
    FAIL("expected a normalization error");
  } catch (const NormalizationError& e) {
    const std::string what = e.what();
    CHECK(what.find("Outer.Inner$m") != std::string::npos);
    CHECK(what.find("Outer$Inner.m") != std::string::npos);
  }
  MemberGraph bad;
  bad.add_edge({"$X", "m"}, {"Y", "a"});
  CHECK_THROWS_AS(normalize(bad), NormalizationError);
}

namespace {

/// Random member graph whose module names carry nesting.
MemberGraph nested_random_graph(std::uint64_t seed) {
  synthetic::Rng rng(seed);
  const std::vector<std::string> modules = {"A", "A$1", "A$1$x", "B", "B$Inner", "C", "D$e"};
  MemberGraph g;
  std::vector<MemberRef> refs;
  for (const auto& m : modules) {
    for (int k = 0; k < 3; ++k) refs.push_back({m, "f" + std::to_string(k)});
    refs.push_back({m, std::string(kVirtualMember)});
  }
  for (const auto& s : refs) {
    for (const auto& t : refs) {
      if (rng.bernoulli(0.08)) g.add_edge(s, t);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("property: normalize is idempotent and leaves no intra-module edge") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const MemberGraph once = normalize(nested_random_graph(seed));
    CHECK(normalize(once) == once);
    for (const auto& e : once.edges()) CHECK(e.cross_module());
    for (const auto& m : once.modules()) CHECK(m.find('$') == std::string::npos);
  }
}

TEST_CASE("lift collapses member multiplicity and keeps direction") {
  MemberGraph g;
  g.add_edge({"A", "f"}, {"B", "g"});
  g.add_edge({"A", "h"}, {"B", "g"});
  WeightedDigraph l = lift(g);
  CHECK(l.edge_count() == 1);
  CHECK(l.weight("A", "B") == 1.0);

  MemberGraph both;
  both.add_edge({"A", "f"}, {"B", "g"});
  both.add_edge({"B", "g"}, {"A", "f"});
  l = lift(both);
  CHECK(l.weight("A", "B") == 1.0);
  CHECK(l.weight("B", "A") == 1.0);
}

TEST_CASE("lift drops dependency-free modules") {
  MemberGraph g;
  g.add_edge({"A", "f"}, {"B", "g"});
  g.add_module("C");
  g.add_edge({"D", "x"}, {"D", "y"});  // intra-module only
  const WeightedDigraph l = lift(normalize(g));
  CHECK(l.vertices() == std::set<std::string>{"A", "B"});
}

TEST_CASE("property: lift vertices are exactly the modules touching cross-module edges") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const MemberGraph g = normalize(synthetic::random_member_graph(12, 4, 0.01, seed));
    std::set<std::string> touching;
    for (const auto& e : g.edges()) {
      touching.insert(e.source.module);
      touching.insert(e.target.module);
    }
    const WeightedDigraph l = lift(g);
    CHECK(l.vertices() == touching);
    for (const auto& [e, w] : l.edges()) {
      CHECK(e.first != e.second);
      CHECK(w == 1.0);
    }
  }
}

TEST_CASE("parse_class_graph") {
  CHECK(parse_class_graph("A\tB\n").weight("A", "B") == 1.0);
  CHECK(parse_class_graph("A\tB\t0.25\n").weight("A", "B") == 0.25);
  CHECK(parse_class_graph("A\tB\t0.25\nA\tB\t0.5\n").weight("A", "B") == 0.75);
  CHECK_THROWS_AS(parse_class_graph("A\tA\n"), ParseError);
  CHECK_THROWS_AS(parse_class_graph("A\tB\t0\n"), ParseError);
  CHECK_THROWS_AS(parse_class_graph("A\tB\t-1\n"), ParseError);
  CHECK_THROWS_AS(parse_class_graph("A\tB\tabc\n"), ParseError);
  CHECK_THROWS_AS(parse_class_graph("A\tB\t1\t2\n"), ParseError);
  CHECK_THROWS_AS(parse_class_graph("A\n"), ParseError);
}

TEST_CASE("parse_package_map") {
  CHECK(parse_package_map("X\ta.b\n").assignment().at("X") == "a.b");
  CHECK(parse_package_map("X\ta.b\nX\ta.b\n").size() == 1);
  CHECK_THROWS_AS(parse_package_map("X\ta.b\nX\ta.c\n"), ParseError);
  CHECK_THROWS_AS(parse_package_map("X\t\n"), ParseError);
  CHECK_THROWS_AS(parse_package_map("X\ta..b\n"), ParseError);
}

TEST_CASE("property: canonical writers round-trip") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const MemberGraph g = parse_member_graph(
        write_member_graph(synthetic::random_member_graph(8, 3, 0.1, seed)));
    CHECK(parse_member_graph(write_member_graph(g)) == g);

    const WeightedDigraph w = parse_class_graph(write_class_graph(
        synthetic::random_digraph(10, 0.3, seed, /*weighted=*/true)));
    CHECK(parse_class_graph(write_class_graph(w)) == w);
  }
  const std::string rows = "A\tB\t0.333333333\nB\tA\t1\n";
  CHECK(write_class_graph(parse_class_graph(rows)) == rows);
}

TEST_CASE("WeightedDigraph derived quantities") {
  const WeightedDigraph g = parse_class_graph("A\tB\t2\nC\tB\t1\nA\tC\t0.5\n");
  CHECK(g.fanin("B") == 2);
  CHECK(g.fanin("A") == 0);
  CHECK(g.out_weight("A") == 2.5);
  CHECK(g.in_weight("B") == 3.0);
  CHECK(g.total_weight() == 3.5);
  double out_sum = 0.0, in_sum = 0.0;
  for (const auto& v : g.vertices()) {
    out_sum += g.out_weight(v);
    in_sum += g.in_weight(v);
  }
  CHECK(out_sum == doctest::Approx(g.total_weight()));
  CHECK(in_sum == doctest::Approx(g.total_weight()));
}
