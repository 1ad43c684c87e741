import random

import pytest
from hypothesis import given, settings

from cfree.blocks import as_block_path, corners
from cfree.embedding import EmbeddingQuery, is_free, is_isomorphic, is_valid_embedding, naive_embedding_oracle
from cfree.graph import Graph, GraphError, PointedGraph, attach_at, clique, cycle, path, star
from cfree.pruning import (
    PreconditionError,
    PruningSpec,
    SuspensionSpec,
    copies_bound,
    default_sampler,
    detachability_hypothesis,
    detachability_stress,
    detachability_witness,
    detachment_spec,
    gamma_h_slices,
    local_pruning_graph,
    plus_sigma,
    prune,
    pruned_corners,
    pruning_transfer_check,
    random_free_graph,
    suspend,
    suspension_spec,
)

from shapes import bowtie, c4_k3_k4, c4_k3_k4_path, c4_k4, k4_k3_k3_path, pointed_edge, pointed_triangle
from strategies import connected_graphs, graphs


def k4_whisker():
    return attach_at(clique(4), 0, pointed_edge())


def test_prune_examples():
    assert prune(bowtie(), PruningSpec([pointed_triangle()])) == Graph(1)
    assert prune(bowtie(), PruningSpec([pointed_edge()])) == bowtie()
    c4_corner = next(k for k in corners(c4_k4()) if 1 in k.vertex_set)
    assert is_isomorphic(prune(c4_k4(), PruningSpec([c4_corner.as_pointed])), clique(4))


def test_prune_keeps_root_and_is_single_pass():
    # edges at both ends of P4 go, the middle edge stays
    assert prune(path(4), PruningSpec([pointed_edge()])) == clique(2)
    assert prune(k4_whisker(), PruningSpec([pointed_edge()])) == clique(4)
    assert prune(clique(1), PruningSpec([pointed_edge()])) == Graph(1)


def test_prune_needs_connected():
    with pytest.raises(GraphError):
        pruned_corners(Graph(2), PruningSpec([pointed_edge()]))


@given(connected_graphs(min_n=1, max_n=7))
def test_prune_result_is_survivor_induced(c):
    spec = PruningSpec([pointed_edge(), pointed_triangle()])
    interior = set()
    for k in pruned_corners(c, spec):
        interior |= k.vertex_set - {k.root}
    survivors = sorted(set(range(c.n)) - interior)
    out = prune(c, spec)
    assert out == c.induced_subgraph(survivors)[0]
    assert out.is_connected()


def test_plus_sigma_examples():
    assert is_isomorphic(plus_sigma(Graph(1), PruningSpec([pointed_edge()]), 2), star(2))
    g = plus_sigma(clique(2), PruningSpec([pointed_triangle()]), 1)
    assert (g.n, g.edge_count) == (6, 7)
    assert plus_sigma(Graph(0), PruningSpec([pointed_triangle()]), 3) == Graph(0)
    with pytest.raises(GraphError):
        plus_sigma(clique(2), PruningSpec([pointed_edge()]), 0)


@given(graphs(max_n=5))
def test_plus_sigma_is_prefix_of_next(g):
    spec = PruningSpec([pointed_edge(), pointed_triangle()])
    small, big = plus_sigma(g, spec, 1), plus_sigma(g, spec, 2)
    assert big.induced_subgraph(range(small.n))[0] == small


def test_copies_bound():
    assert copies_bound(bowtie()) == 5


def test_transfer_precondition():
    with pytest.raises(PreconditionError):
        pruning_transfer_check(bowtie(), PruningSpec([pointed_triangle()]), cycle(5))
    assert pruning_transfer_check(bowtie(), PruningSpec([pointed_triangle()]), Graph(0))


def test_transfer_path_three():
    # P3 prunes to a single vertex, so only the empty host qualifies
    with pytest.raises(PreconditionError):
        pruning_transfer_check(path(3), PruningSpec([pointed_edge()]), Graph(1), 1)
    assert is_free(plus_sigma(Graph(1), PruningSpec([pointed_edge()]), 1), path(3))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_transfer_nondegenerate(g):
    c, spec = k4_whisker(), PruningSpec([pointed_edge()])
    if not is_free(g, clique(4)):
        with pytest.raises(PreconditionError):
            pruning_transfer_check(c, spec, g)
        return
    assert pruning_transfer_check(c, spec, g, 2)


def test_suspend_examples():
    one = PointedGraph(Graph(1), 0)
    assert suspend(Graph(1), SuspensionSpec(Graph(1), 0, one, Graph(0))).edge_count == 1
    assert is_isomorphic(suspend(Graph(3), SuspensionSpec(Graph(1), 0, one, Graph(0))), star(3))
    s = suspend(clique(3), SuspensionSpec(Graph(1), 0, pointed_edge(), Graph(0)))
    assert (s.n, s.edge_count) == (5, 7)
    assert is_isomorphic(s, attach_at(clique(4), 0, pointed_edge()))


@given(graphs(max_n=6))
def test_suspension_degree(h):
    spec = detachment_spec(c4_k3_k4_path(), 2)
    s = suspend(h, spec)
    root = h.n + spec.attached_part.basepoint
    assert s.degrees[root] == h.n + spec.attached_part.graph.degrees[spec.attached_part.basepoint]


def test_suspension_spec_partitions():
    c = c4_k3_k4()
    for k in corners(c):
        spec = suspension_spec(c, k)
        assert spec.residue.n == len(k.vertex_set) - 1
        assert spec.attached_part.n + spec.residue.n == c.n


def test_detachability_examples():
    bp = c4_k3_k4_path()
    q, f = detachability_witness(bp, 2)
    assert f is not None and is_valid_embedding(q, f)
    assert (q.pattern.n, q.host.n) == (5, 5)
    assert not detachability_hypothesis(k4_k3_k3_path(), 2)
    assert detachability_hypothesis(as_block_path(path(4)), 2)


def test_detachability_witness_matches_oracle():
    q, f = detachability_witness(c4_k3_k4_path(), 2)
    assert naive_embedding_oracle(EmbeddingQuery(q.pattern, q.host, q.mode, f)) == 1


def test_detachability_end_block_rejected():
    with pytest.raises(GraphError):
        detachability_hypothesis(c4_k3_k4_path(), 1)
    with pytest.raises(GraphError):
        detachability_hypothesis(c4_k3_k4_path(), 3)


def test_detachment_spec_shape():
    spec = detachment_spec(c4_k3_k4_path(), 2)
    assert spec.corner_root == 5
    assert is_isomorphic(spec.attached_part.graph, clique(4))
    assert (spec.residue.n, spec.residue.edge_count) == (5, 5)


def test_stress_on_three_block_path():
    bp = c4_k3_k4_path()
    report = detachability_stress(bp.graph, detachment_spec(bp, 2), trials=40, seed=1)
    assert report.trials == 40 and report.violations == 0 and report.witness is None


def test_stress_path_three():
    bp = as_block_path(path(3))
    spec = detachment_spec(bp, 1)
    assert spec.residue == Graph(1)
    report = detachability_stress(path(3), spec, default_sampler(6), trials=20)
    assert report.violations == 0


def test_stress_zero_trials():
    report = detachability_stress(path(3), detachment_spec(as_block_path(path(3)), 1), trials=0)
    assert report.to_json()["trials"] == 0 and report.witness is None


def test_stress_refutes_wrong_side_of_p5():
    c = path(5)
    corner = next(k for k in corners(c) if k.root == 1 and k.vertex_set == {1, 2, 3, 4})
    spec = suspension_spec(c, corner)
    assert spec.residue == path(3)
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert is_free(two_edges, path(3)) and not is_free(suspend(two_edges, spec), c)

    def matchings(rng, forbidden):
        k = rng.randint(0, 3)
        return Graph.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)]), False

    report = detachability_stress(c, spec, matchings, trials=30, seed=3)
    assert report.violations > 0
    assert report.witness is not None and len(report.violating_seeds) == report.violations


def test_stress_is_deterministic():
    bp = c4_k3_k4_path()
    spec = detachment_spec(bp, 2)
    a = detachability_stress(bp.graph, spec, trials=10, seed=7).to_json()
    b = detachability_stress(bp.graph, spec, trials=10, seed=7).to_json()
    assert a == b


def test_random_free_graph_is_free():
    rng = random.Random(0)
    for _ in range(30):
        g, _ = random_free_graph(rng, 8, clique(3), retries=1)
        assert is_free(g, clique(3))
    g, repaired = random_free_graph(random.Random(0), 5, Graph(1), retries=1)
    assert g.n == 0


def test_gamma_slices_examples():
    one = PointedGraph(Graph(1), 0)
    sizes = sorted(s.n for s in gamma_h_slices(star(3), one))
    assert sizes == [1, 1, 1, 3]
    assert gamma_h_slices(Graph(3), pointed_edge()) == []
    assert [s.n for s in gamma_h_slices(clique(3), one)] == [2, 2, 2]
    assert local_pruning_graph(clique(3), one).n == 6
