import pytest

import sarfkit

TWO_PAIRS = "A\tB\nB\tA\nC\tD\nD\tC\n"


def test_cluster_two_pairs():
    g = sarfkit.parse_class_graph(TWO_PAIRS)
    result = sarfkit.cluster_sarf(g)
    assert result.decomposition.clusters == {"C1": {"A", "B"}, "C2": {"C", "D"}}
    assert sarfkit.modularity(g, result.decomposition) == pytest.approx(0.5)
    assert len(result.dendrogram.merges) == 3
    baseline = sarfkit.cluster_newman_unweighted(g)
    assert baseline.decomposition == result.decomposition


def test_member_level_pipeline():
    g = sarfkit.MemberGraph()
    g.add_edge("A", "f", "B$Inner", "g")
    g.add_edge("B", "g", "A", "f")
    g.add_edge("C", "f", "D", "g")
    g.add_edge("D", "g", "C", "h")
    n = sarfkit.normalize(g)
    assert "B$Inner" not in n.modules()
    result = sarfkit.cluster_sarf(g)
    assert result.decomposition.same_partition(
        sarfkit.Decomposition({"x": {"A", "B"}, "y": {"C", "D"}}))


def test_dedication():
    d = sarfkit.dedication_simple(sarfkit.parse_class_graph("A\tB\nC\tB\n"))
    assert d.weight("A", "B") == 0.5
    g = sarfkit.parse_member_graph("A\ta1\tB\tm1\tinvoke\nA\ta2\tB\tm1\tinvoke\nC\tc1\tB\tm2\tinvoke\n")
    m = sarfkit.dedication_multilevel(g)
    assert m.weight("A", "B") == 0.25
    assert m.weight("C", "B") == 0.5
    terms = sarfkit.dedication_terms(g, "A", "B")
    assert terms["externally_depended_count"] == 2


def test_metrics():
    a = sarfkit.Decomposition({"A1": {"a1", "a2", "a3", "a4", "a5"}, "A2": {"b1", "b2", "b3", "b4", "b5"}})
    c = sarfkit.Decomposition({"C1": {"a1", "a2", "a3"}, "C2": {"a4", "a5"},
                               "C3": {"b1", "b2", "b3"}, "C4": {"b4", "b5"}})
    assert sarfkit.mno(c, a) == 2
    assert sarfkit.mno_brute_force(c.restricted_to({"a1", "a2", "a4", "b1"}),
                                   a.restricted_to({"a1", "a2", "a4", "b1"})) == 1
    assert sarfkit.max_mno(a) == 8
    assert sarfkit.mojofm(c, a) == 75.0
    assert sarfkit.mojosim(c, a) == 80.0
    assert sarfkit.ned(c) == 0.0
    assert sarfkit.stability([("v1", a), ("v2", a), ("v3", c)]) == [100.0, 80.0]


def test_packages():
    packages = sarfkit.parse_package_map("A\tapp\nB\tapp\nC\tapp.util\n")
    assert sarfkit.occupancy(packages) == pytest.approx(200 / 3)
    auth = sarfkit.auth_decomposition(packages)
    assert auth.clusters == {"app": {"A", "B", "C"}}


def test_json_round_trip():
    d = sarfkit.Decomposition({"C1": {"x", "y"}, "C2": {"z"}})
    assert sarfkit.Decomposition.from_json(d.to_json()) == d


def test_errors_map_to_python_exceptions():
    with pytest.raises(sarfkit.ParseError):
        sarfkit.parse_class_graph("A\tA\n")
    with pytest.raises(sarfkit.DomainError):
        sarfkit.mno(sarfkit.Decomposition({"a": {"x"}}), sarfkit.Decomposition({"a": {"y"}}))
    with pytest.raises(ValueError):
        sarfkit.agglomerate(sarfkit.WeightedDigraph())


def test_planted_partition_and_distmap():
    graph, planted = sarfkit.planted_partition(4, 8, 0.6, 0.05, 20110701)
    result = sarfkit.cluster_sarf(graph)
    assert sarfkit.mojofm(result.decomposition, planted) >= 90.0
    svg = sarfkit.distribution_map_svg(result.decomposition, planted)
    assert svg.count('class="cell"') == 32
    assert len(sarfkit.distribution_map_text(result.decomposition, planted).splitlines()) == 4
