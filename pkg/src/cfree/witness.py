"""The G_ε witness family for a two-block constraint with an incomplete small block.

Hyperedges of a high-girth hypergraph are split as ``E = E1 ⊔ E2``; ``G0`` puts
a clique on every ``E1``, ``G1`` hangs a clique of order ``n2 + 1`` at every
vertex, and ``G_ε`` decorates each ``E2`` either with an edge (ε = 1) or with a
copy of ``B1`` minus an edge at the cut vertex (ε = 0).  All checks here run on
a finite truncation of the family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .blocks import as_block_path
from .embedding import EmbeddingQuery, find_copy, find_embedding, is_free, iter_embeddings
from .graph import Graph, GraphError
from .hypergraph import ADAPTIVE, Hypergraph, build


class ConstructionInapplicable(GraphError):
    pass


@dataclass(frozen=True)
class TwoBlockConstraint:
    c: Graph
    b1: frozenset[int]
    b2: frozenset[int]
    vstar: int
    deleted_edge: tuple[int, int]
    # B1 relabelled to 0..n1-1 with the deleted edge removed
    b1_minus: Graph
    # local indices in b1_minus of v_* and of the other end of the deleted edge
    b1_vstar: int
    b1_other: int

    @property
    def n1(self) -> int:
        return len(self.b1)

    @property
    def n2(self) -> int:
        return len(self.b2)


def two_block_constraint(c: Graph) -> TwoBlockConstraint:
    bp = as_block_path(c)
    if bp is None or bp.length != 2:
        raise ConstructionInapplicable("constraint must be a block path with exactly two blocks")
    first, second = bp.blocks
    complete = [c.induced_subgraph(b)[0].is_complete() for b in bp.blocks]
    if len(first) > len(second) or (len(first) == len(second) and complete[0] and not complete[1]):
        first, second = second, first
    b1_graph, keep = c.induced_subgraph(first)
    if b1_graph.is_complete():
        raise ConstructionInapplicable("construction inapplicable: the smaller block is complete")
    vstar = bp.cut_vertices[0]
    other = min(w for w in c.adjacency[vstar] if w in first)
    loc_v, loc_o = keep.index(vstar), keep.index(other)
    b1_minus = Graph(b1_graph.n, b1_graph.edges - {tuple(sorted((loc_v, loc_o)))})
    return TwoBlockConstraint(
        c, frozenset(first), frozenset(second), vstar, tuple(sorted((vstar, other))),
        b1_minus, loc_v, loc_o,
    )


@dataclass(frozen=True)
class WitnessFamily:
    constraint: TwoBlockConstraint
    hypergraph: Hypergraph
    girth: int
    splits: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    g0: Graph
    g1: Graph
    # fresh vertices of the clique hung at each hypergraph vertex
    clique_of: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def M(self) -> int:
        return len(self.splits)


def split_hyperedge(e: Sequence[int], n1: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``E2`` = the two smallest members other than ``max E``; ``E1`` = the rest."""
    top = max(e)
    rest = sorted(x for x in e if x != top)
    e2 = tuple(rest[:2])
    e1 = tuple(sorted(rest[2:] + [top]))
    assert len(e1) == n1 - 1
    return e1, e2


def make_family(c: Graph, M: int, girth_margin: int = 1) -> WitnessFamily:
    tc = two_block_constraint(c)
    n1, n2 = tc.n1, tc.n2
    k = n1 + 1
    g = max(n1, n2) + girth_margin
    hyp = build(k, g, M, ADAPTIVE)
    splits = tuple(split_hyperedge(e, n1) for e in hyp.hyperedges)
    V = hyp.vertex_count
    g0 = Graph.from_edges(V, (p for e1, _ in splits for p in combinations(e1, 2)))
    cliques = []
    edges = set(g0.edges)
    nxt = V
    for v in range(V):
        fresh = tuple(range(nxt, nxt + n2))
        nxt += n2
        cliques.append(fresh)
        edges.update(combinations((v,) + fresh, 2))
    g1 = Graph(nxt, frozenset(edges))
    return WitnessFamily(tc, hyp, g, splits, g0, g1, tuple(cliques))


def parse_eps(bits: str, M: int) -> tuple[int, ...]:
    bits = bits.strip()
    if len(bits) != M or set(bits) - {"0", "1"}:
        raise ValueError(f"epsilon must be a string of {M} bits")
    return tuple(int(b) for b in bits)


def random_eps(rng: random.Random, M: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 1) for _ in range(M))


def _check_eps(fam: WitnessFamily, eps: Sequence[int]) -> None:
    if len(eps) != fam.M or any(x not in (0, 1) for x in eps):
        raise ValueError(f"epsilon must assign 0/1 to each of the {fam.M} hyperedges")


def instantiate(fam: WitnessFamily, eps: Sequence[int]) -> Graph:
    _check_eps(fam, eps)
    tc = fam.constraint
    edges = set(fam.g1.edges)
    nxt = fam.g1.n
    for (_, (a, b)), bit in zip(fam.splits, eps):
        if bit:
            edges.add((a, b))
            continue
        # smaller E2 vertex plays v_*
        local = {tc.b1_vstar: a, tc.b1_other: b}
        for x in range(tc.b1_minus.n):
            if x not in local:
                local[x] = nxt
                nxt += 1
        edges.update(tuple(sorted((local[x], local[y]))) for x, y in tc.b1_minus.edges)
    return Graph(nxt, frozenset(edges))


def check_cfree(fam: WitnessFamily, eps: Sequence[int]) -> bool:
    return is_free(instantiate(fam, eps), fam.constraint.c)


def distinguisher_copy(fam: WitnessFamily, eps: Sequence[int], edge_index: int) -> dict[int, int] | None:
    """A copy of the constraint in G_ε plus the ``E2`` edge of ``edge_index``."""
    _check_eps(fam, eps)
    if eps[edge_index] != 0:
        raise ValueError("distinguisher needs ε = 0 on the chosen hyperedge")
    a, b = fam.splits[edge_index][1]
    host = instantiate(fam, eps).add_edges([(a, b)])
    c = fam.constraint.c
    # the expected copy sits on v_* ↦ a; fall back to a full search
    f = find_embedding(EmbeddingQuery(c, host, anchors={fam.constraint.vstar: a}))
    return f if f is not None else find_copy(host, c)


def check_distinguisher(fam: WitnessFamily, eps: Sequence[int], edge_index: int) -> bool:
    return distinguisher_copy(fam, eps, edge_index) is not None


def vertex_count_formula(fam: WitnessFamily, eps: Sequence[int] | None = None) -> int:
    """``|V(G1)|``, or ``|V(G_ε)|`` when ``eps`` is given."""
    base = fam.hypergraph.vertex_count * (1 + fam.constraint.n2)
    if eps is None:
        return base
    return base + sum(1 for x in eps if x == 0) * (fam.constraint.n1 - 2)


def audit_shape(fam: WitnessFamily) -> dict[str, bool]:
    n1 = fam.constraint.n1
    g0 = fam.g0
    clique_edges = set()
    cliques_ok = True
    for e1, _ in fam.splits:
        pairs = set(combinations(e1, 2))
        cliques_ok &= len(e1) == n1 - 1 and pairs <= g0.edges
        clique_edges |= pairs
    meets = all(
        set(fresh).isdisjoint(range(g0.n))
        and all(not (fam.g1.adjacency[x] - {v} - set(fresh)) for x in fresh)
        for v, fresh in enumerate(fam.clique_of)
    )
    return {
        "e1_cliques": cliques_ok,
        "no_extra_g0_edges": g0.edges == clique_edges,
        "cliques_meet_g0_at_root": meets,
        "g1_vertex_count": fam.g1.n == vertex_count_formula(fam),
    }


@dataclass
class RigidityReport:
    hyperedges_checked: int = 0
    anchor_tuples: int = 0
    violations: list[dict] = field(default_factory=list)
    c_copy: dict[int, int] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "hyperedges_checked": self.hyperedges_checked,
            "anchor_tuples": self.anchor_tuples,
            "violations": self.violations,
            "c_copy": None if self.c_copy is None else {str(k): v for k, v in self.c_copy.items()},
        }


def rigidity_prefix(fam: WitnessFamily, t: int) -> tuple[Graph, list[int]]:
    """Portion of G1 carried by ``E1`` of hyperedge ``t``: the clique plus its hung cliques."""
    e1 = fam.splits[t][0]
    verts = set(e1)
    for v in e1:
        verts.update(fam.clique_of[v])
    return fam.g1.induced_subgraph(verts)


def check_rigidity(
    fam: WitnessFamily, eps: Sequence[int], trials: int, host: Graph | None = None
) -> RigidityReport:
    """Embeddings of a hyperedge's G1-prefix that agree below ``max E`` must agree on it.

    For each of the first ``trials`` hyperedges, every image of ``E1`` that
    extends to the whole prefix is grouped by the images of ``E1 - {max E}``;
    a group with two different images of ``max E`` is a violation.  When any
    violation occurs the host is searched for a copy of the constraint.
    """
    if host is None:
        host = instantiate(fam, eps)
    report = RigidityReport()
    for t in range(min(trials, fam.M)):
        report.hyperedges_checked += 1
        prefix, keep = rigidity_prefix(fam, t)
        e1 = fam.splits[t][0]
        local = [keep.index(v) for v in e1]
        top = local[-1]
        core = Graph.from_edges(len(local), combinations(range(len(local)), 2))
        groups: dict[tuple[int, ...], set[int]] = {}
        for phi in iter_embeddings(EmbeddingQuery(core, host)):
            anchors = {local[i]: phi[i] for i in range(len(local))}
            if find_embedding(EmbeddingQuery(prefix, host, anchors=anchors)) is None:
                continue
            report.anchor_tuples += 1
            key = tuple(phi[i] for i in range(len(local) - 1))
            groups.setdefault(key, set()).add(anchors[top])
        for key, tops in sorted(groups.items()):
            if len(tops) > 1:
                report.violations.append(
                    {"hyperedge": t, "lower_images": list(key), "top_images": sorted(tops)}
                )
    if report.violations:
        report.c_copy = find_copy(host, fam.constraint.c)
    return report
