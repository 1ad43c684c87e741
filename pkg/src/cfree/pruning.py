"""Corner pruning, the decorated graph G+(Σ), suspension and detachability."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .blocks import BlockPath, Corner, corner_complement, corners, segment_vertices
from .embedding import (
    SUBGRAPH,
    EmbeddingQuery,
    find_copy,
    find_embedding,
    is_free,
    iter_embeddings,
    prunes,
)
from .graph import Graph, GraphError, PointedGraph, attach_at, disjoint_union, serialize_graph

EDGE_PROBABILITIES = (0.2, 0.5, 0.8)
DEFAULT_COPIES = 2


class PreconditionError(GraphError):
    """An operation's documented precondition does not hold."""


@dataclass(frozen=True)
class PruningSpec:
    sigma: tuple[PointedGraph, ...]

    def __init__(self, sigma: Sequence[PointedGraph]):
        object.__setattr__(self, "sigma", tuple(sigma))


@dataclass(frozen=True)
class SuspensionSpec:
    constraint: Graph
    corner_root: int
    attached_part: PointedGraph
    residue: Graph


def suspension_spec(c: Graph, corner: Corner) -> SuspensionSpec:
    """Keep ``corner`` as the residue side; attach the other corners at its root."""
    residue, _ = c.induced_subgraph(corner.vertex_set - {corner.root})
    return SuspensionSpec(c, corner.root, corner_complement(c, corner), residue)


def pruned_corners(c: Graph, spec: PruningSpec) -> list[Corner]:
    if c.n == 0 or not c.is_connected():
        raise GraphError("pruning needs a connected constraint")
    if c.n == 1:
        return []
    return [k for k in corners(c) if any(prunes(k.as_pointed, s) for s in spec.sigma)]


def prune(c: Graph, spec: PruningSpec) -> Graph:
    """Delete, all at once, every pruned corner except its root."""
    doomed: set[int] = set()
    for k in pruned_corners(c, spec):
        doomed |= k.vertex_set - {k.root}
    return c.induced_subgraph(set(range(c.n)) - doomed)[0]


def plus_sigma(g: Graph, spec: PruningSpec, m: int = DEFAULT_COPIES) -> Graph:
    """Attach ``m`` fresh copies of every member of Σ at every vertex of ``g``.

    Copies are added round by round (all vertices and members for copy 0, then
    copy 1, ...), so the result for ``m`` is the labelled induced prefix of the
    result for ``m + 1``.
    """
    if m < 1:
        raise GraphError("copy count must be positive")
    out = g
    for _ in range(m):
        for v in range(g.n):
            for s in spec.sigma:
                out = attach_at(out, v, s)
    return out


def copies_bound(c: Graph) -> int:
    """Copies per vertex that always suffice for one embedding of ``c``."""
    return c.n


def pruning_transfer_check(c: Graph, spec: PruningSpec, g: Graph, m: int = DEFAULT_COPIES) -> bool:
    pruned = prune(c, spec)
    if not is_free(g, pruned):
        raise PreconditionError("host graph contains the pruned constraint")
    return is_free(plus_sigma(g, spec, m), c)


def suspend(h: Graph, spec: SuspensionSpec) -> Graph:
    """Disjoint union of ``h`` and the attached part, root joined to all of ``h``."""
    glued = disjoint_union([h, spec.attached_part.graph])
    root = h.n + spec.attached_part.basepoint
    return glued.add_edges((root, x) for x in range(h.n))


def _hypothesis_query(bp: BlockPath, i: int) -> EmbeddingQuery:
    ell = bp.length
    if not 1 < i < ell:
        raise GraphError(f"block {i} does not carry two cut vertices (length {ell})")
    u, v = bp.cut_vertices[i - 2], bp.cut_vertices[i - 1]
    left, _ = segment_vertices(bp, i, "left")
    right, _ = segment_vertices(bp, i, "right")
    pattern, _ = bp.graph.induced_subgraph(set(left) - {v})
    host, _ = bp.graph.induced_subgraph(set(right) - {u})
    return EmbeddingQuery(pattern, host, SUBGRAPH)


def detachability_witness(bp: BlockPath, i: int) -> tuple[EmbeddingQuery, dict[int, int] | None]:
    """The query ``L_v - v`` into ``R_u - u`` at block ``i`` and its least embedding."""
    q = _hypothesis_query(bp, i)
    return q, find_embedding(q)


def detachability_hypothesis(bp: BlockPath, i: int) -> bool:
    return detachability_witness(bp, i)[1] is not None


def detachment_spec(bp: BlockPath, i: int) -> SuspensionSpec:
    """Spec detaching the right corner ``(v_i, R_{i+1})`` at the right cut vertex of block ``i``."""
    if not 1 <= i < bp.length:
        raise GraphError(f"block {i} has no right-hand cut vertex")
    v = bp.cut_vertices[i - 1]
    left, _ = segment_vertices(bp, i, "left")
    right, _ = segment_vertices(bp, i + 1, "right")
    attached, keep = bp.graph.induced_subgraph(right)
    residue, _ = bp.graph.induced_subgraph(set(left) - {v})
    return SuspensionSpec(bp.graph, v, PointedGraph(attached, keep.index(v)), residue)


def erdos_renyi(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_free_graph(
    rng: random.Random, max_n: int, forbidden: Graph, retries: int = 20
) -> tuple[Graph, bool]:
    """Random ``forbidden``-free graph on at most ``max_n`` vertices.

    Rejection-samples Erdős–Rényi graphs (order uniform in ``[0, max_n]``, edge
    probability drawn from :data:`EDGE_PROBABILITIES`).  After ``retries``
    misses the last draw is repaired by deleting edges of found copies.  The
    flag reports whether repair was needed.
    """
    g = Graph(0)
    for _ in range(retries):
        g = erdos_renyi(rng, rng.randint(0, max_n), rng.choice(EDGE_PROBABILITIES))
        if is_free(g, forbidden):
            return g, False
    if forbidden.edge_count == 0:
        return g.induced_subgraph(range(min(g.n, forbidden.n - 1)))[0], True
    pedges = forbidden.sorted_edges()
    while True:
        f = find_copy(g, forbidden)
        if f is None:
            return g, True
        a, b = rng.choice(pedges)
        g = Graph(g.n, g.edges - {tuple(sorted((f[a], f[b])))})


Sampler = Callable[[random.Random, Graph], "tuple[Graph, bool]"]


def default_sampler(max_n: int = 8, retries: int = 20) -> Sampler:
    return lambda rng, forbidden: random_free_graph(rng, max_n, forbidden, retries)


def trial_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


@dataclass
class StressReport:
    trials: int = 0
    violations: int = 0
    repaired: int = 0
    witness: str | None = None
    trial_seeds: list[int] = field(default_factory=list)
    violating_seeds: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "repaired": self.repaired,
            "witness": self.witness,
            "trial_seeds": self.trial_seeds,
            "violating_seeds": self.violating_seeds,
        }


def detachability_stress(
    c: Graph,
    spec: SuspensionSpec,
    sampler: Sampler | None = None,
    trials: int = 200,
    seed: int = 0,
) -> StressReport:
    """Try to refute detachability on random residue-free graphs.

    Each trial draws a residue-free ``H`` from its own seeded generator,
    suspends it and checks that the result is ``c``-free.  Zero violations is
    evidence, not proof.
    """
    sampler = sampler or default_sampler()
    report = StressReport()
    witnesses = []
    for i in range(trials):
        s = trial_seed(seed, i)
        h, repaired = sampler(random.Random(s), spec.residue)
        report.trials += 1
        report.repaired += repaired
        report.trial_seeds.append(s)
        if not is_free(suspend(h, spec), c):
            report.violations += 1
            report.violating_seeds.append(s)
            witnesses.append(serialize_graph(h))
    if witnesses:
        report.witness = min(witnesses)
    return report


def gamma_h_slices(gamma: Graph, attached: PointedGraph, mode: str = SUBGRAPH) -> list[Graph]:
    """Neighbourhood slices of ``h(v)`` outside ``h[attached]``, one per embedding ``h``."""
    out = []
    for h in iter_embeddings(EmbeddingQuery(attached.graph, gamma, mode)):
        image = set(h.values())
        root = h[attached.basepoint]
        keep = [u for u in gamma.adjacency[root] if u not in image]
        out.append(gamma.induced_subgraph(keep)[0])
    return out


def local_pruning_graph(gamma: Graph, attached: PointedGraph, mode: str = SUBGRAPH) -> Graph:
    """Disjoint union of all slices."""
    return disjoint_union(gamma_h_slices(gamma, attached, mode))
