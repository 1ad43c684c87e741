import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfree.embedding import is_isomorphic
from cfree.graph import (
    Graph,
    GraphError,
    GraphFormatError,
    PointedGraph,
    attach_at,
    clique,
    cycle,
    delete_edge,
    disjoint_union,
    parse_graph,
    parse_pointed_graph,
    path,
    serialize_graph,
)

from strategies import connected_graphs, graphs


@pytest.mark.parametrize("n,edges", [(1, 0), (4, 6), (6, 15)])
def test_clique_counts(n, edges):
    g = clique(n)
    assert (g.n, g.edge_count) == (n, edges)


def test_clique_rejects_zero():
    with pytest.raises(GraphError):
        clique(0)


def test_cycle_examples():
    assert is_isomorphic(cycle(3), clique(3))
    c4 = cycle(4)
    assert c4.n == 4 and c4.edge_count == 4 and set(c4.degrees) == {2}
    assert cycle(5).edge_count == 5
    with pytest.raises(GraphError):
        cycle(2)


def test_delete_edge_examples():
    assert delete_edge(clique(4), (0, 1)).edge_count == 5
    assert is_isomorphic(delete_edge(cycle(4), (0, 1)), path(4))
    assert is_isomorphic(delete_edge(clique(3), (1, 2)), path(3))
    with pytest.raises(GraphError):
        delete_edge(path(3), (0, 2))


def test_graph_invariants_enforced():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    g = Graph.from_edges(2, [(1, 0), (0, 1)])
    assert g.edges == {(0, 1)}
    with pytest.raises(dataclasses.FrozenInstanceError):
        g.n = 3


def test_attach_at_examples():
    single = Graph(1)
    assert attach_at(single, 0, PointedGraph(single, 0)) == single

    whisker = attach_at(clique(3), 0, PointedGraph(clique(2), 0))
    assert (whisker.n, whisker.edge_count) == (4, 4)
    assert whisker.has_edge(0, 3)

    g = attach_at(cycle(4), 2, PointedGraph(clique(3), 0))
    assert (g.n, g.edge_count) == (6, 7)
    assert g.has_edge(2, 4) and g.has_edge(2, 5) and g.has_edge(4, 5)


def test_attach_at_numbering_skips_basepoint():
    s = PointedGraph(path(3), 1)  # centre of a path
    g = attach_at(Graph(2), 1, s)
    assert g.edges == {(1, 2), (1, 3)}


def test_attach_at_rejects_bad_vertex():
    with pytest.raises(GraphError):
        attach_at(clique(2), 5, PointedGraph(clique(2), 0))


def test_disjoint_union_examples():
    assert disjoint_union([]) == Graph(0)
    two = disjoint_union([clique(3), clique(3)])
    assert (two.n, two.edge_count, len(two.components())) == (6, 6, 2)
    mixed = disjoint_union([cycle(4), clique(2)])
    assert (mixed.n, mixed.edge_count) == (6, 5)


def test_parse_examples():
    assert parse_graph("n 2\ne 0 1") == clique(2)
    assert parse_graph("n 3\ne 0 1\ne 1 2\ne 2 0") == clique(3)
    assert parse_graph(serialize_graph(clique(3))) == clique(3)


def test_parse_comments_and_pointed():
    pg = parse_pointed_graph("# a pointed edge\nn 2\n\ne 1 0\np 1\n")
    assert pg == PointedGraph(clique(2), 1)


def test_serialize_sorts_edges():
    g = Graph.from_edges(3, [(2, 1), (0, 2)])
    assert serialize_graph(g) == "n 3\ne 0 2\ne 1 2\n"


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("n 3\ne 0 1\ne 0 x", 3),
        ("n 3\ne 0 3", 2),
        ("n 3\ne 0 1\n# c\ne 1 0", 4),
        ("e 0 1", 1),
        ("n 2\ne 1 1", 2),
        ("n 2\nq 1", 2),
        ("n 2\np 0\np 1", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_pointed_requires_basepoint():
    with pytest.raises(GraphFormatError):
        parse_pointed_graph("n 2\ne 0 1\n")


@given(graphs(max_n=9))
def test_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


@given(connected_graphs(max_n=6), connected_graphs(max_n=5), st.data())
def test_attach_counts(g, s, data):
    v = data.draw(st.integers(0, g.n - 1))
    b = data.draw(st.integers(0, s.n - 1))
    out = attach_at(g, v, PointedGraph(s, b))
    assert out.n == g.n + s.n - 1
    assert out.edge_count == g.edge_count + s.edge_count
