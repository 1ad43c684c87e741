"""Subgraph and induced-subgraph embedding search.

The engine is a backtracking matcher over integer bitmask neighbourhoods.
Pattern vertices are placed in a connected order that greedily maximises the
number of already-placed neighbours; host candidates are tried in increasing
index order, so the first embedding found is the lexicographically least one
with respect to that placement order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Mapping

from .graph import Graph, GraphError, PointedGraph

SUBGRAPH = "subgraph"
INDUCED = "induced"
NODE_BUDGET_ENV = "CFREE_NODE_BUDGET"


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EmbeddingQuery:
    pattern: Graph
    host: Graph
    mode: str = SUBGRAPH
    anchors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (SUBGRAPH, INDUCED):
            raise GraphError(f"unknown embedding mode {self.mode!r}")
        targets = list(self.anchors.values())
        if len(set(targets)) != len(targets):
            raise GraphError("anchors must be injective")
        for p, h in self.anchors.items():
            if not 0 <= p < self.pattern.n:
                raise GraphError(f"anchor source {p} outside pattern")
            if not 0 <= h < self.host.n:
                raise GraphError(f"anchor target {h} outside host")


def _node_budget() -> int | None:
    raw = os.environ.get(NODE_BUDGET_ENV)
    return int(raw) if raw else None


def search_order(pattern: Graph, anchored=()) -> list[int]:
    anchored = sorted(anchored)
    order = list(anchored)
    placed = set(order)
    back = [0] * pattern.n
    for a in anchored:
        for w in pattern.adjacency[a]:
            back[w] += 1
    deg = pattern.degrees
    while len(order) < pattern.n:
        best = min(
            (v for v in range(pattern.n) if v not in placed),
            key=lambda v: (-back[v], -deg[v], v),
        )
        order.append(best)
        placed.add(best)
        for w in pattern.adjacency[best]:
            back[w] += 1
    return order


def _iter_maps(q: EmbeddingQuery, budget: int | None) -> Iterator[dict[int, int]]:
    pattern, host = q.pattern, q.host
    if pattern.n > host.n:
        return
    order = search_order(pattern, q.anchors)
    pos = {v: i for i, v in enumerate(order)}
    back_nbrs = [[pos[w] for w in pattern.adjacency[v] if pos[w] < i] for i, v in enumerate(order)]
    induced = q.mode == INDUCED
    back_non = [
        [j for j in range(i) if order[j] not in pattern.adjacency[v]] for i, v in enumerate(order)
    ]
    need_deg = [pattern.degrees[v] for v in order]
    fixed = [q.anchors.get(v) for v in order]
    hadj = host.adj_masks
    hdeg = host.degrees
    all_mask = (1 << host.n) - 1
    k = pattern.n
    image = [0] * k
    nodes = 0

    def candidates(i: int, used: int) -> int:
        if fixed[i] is not None:
            m = 1 << fixed[i]
            if used & m:
                return 0
        else:
            m = all_mask & ~used
        for j in back_nbrs[i]:
            m &= hadj[image[j]]
            if not m:
                return 0
        if induced:
            for j in back_non[i]:
                m &= ~hadj[image[j]]
        return m

    if k == 0:
        yield {}
        return
    # remaining candidate masks, one per depth
    masks = [0] * k
    masks[0] = candidates(0, 0)
    depth = 0
    used = 0
    while depth >= 0:
        m = masks[depth]
        chosen = -1
        while m:
            b = m & -m
            m ^= b
            h = b.bit_length() - 1
            if hdeg[h] >= need_deg[depth]:
                chosen = h
                break
        masks[depth] = m
        if chosen < 0:
            depth -= 1
            if depth >= 0:
                used &= ~(1 << image[depth])
            continue
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetExceeded(f"embedding search exceeded {budget} nodes")
        image[depth] = chosen
        if depth == k - 1:
            yield {order[i]: image[i] for i in range(k)}
            continue
        used |= 1 << chosen
        depth += 1
        masks[depth] = candidates(depth, used)


def iter_embeddings(q: EmbeddingQuery, budget: int | None = None) -> Iterator[dict[int, int]]:
    """All embeddings, in deterministic search order."""
    if budget is None:
        budget = _node_budget()
    return _iter_maps(q, budget)


def find_embedding(q: EmbeddingQuery, budget: int | None = None) -> dict[int, int] | None:
    for f in iter_embeddings(q, budget):
        return dict(sorted(f.items()))
    return None


def count_embeddings(q: EmbeddingQuery, budget: int | None = None) -> int:
    return sum(1 for _ in iter_embeddings(q, budget))


def embeds(pattern: Graph, host: Graph, mode: str = SUBGRAPH, anchors=None) -> bool:
    return find_embedding(EmbeddingQuery(pattern, host, mode, anchors or {})) is not None


def is_free(host: Graph, c: Graph) -> bool:
    """True iff ``host`` contains no subgraph isomorphic to the connected graph ``c``."""
    if c.n == 0 or not c.is_connected():
        raise GraphError("forbidden graph must be connected and nonempty")
    return find_embedding(EmbeddingQuery(c, host)) is None


def find_copy(host: Graph, c: Graph) -> dict[int, int] | None:
    return find_embedding(EmbeddingQuery(c, host))


def prunes(corner: PointedGraph, by: PointedGraph) -> bool:
    """Whether ``corner`` embeds into ``by`` as a pointed subgraph."""
    q = EmbeddingQuery(corner.graph, by.graph, SUBGRAPH, {corner.basepoint: by.basepoint})
    return find_embedding(q) is not None


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.edge_count == b.edge_count and embeds(a, b)


def is_valid_embedding(q: EmbeddingQuery, f: Mapping[int, int]) -> bool:
    """Check a candidate map directly against the embedding contract."""
    p, h = q.pattern, q.host
    if sorted(f) != list(range(p.n)):
        return False
    img = list(f.values())
    if len(set(img)) != len(img) or any(not 0 <= x < h.n for x in img):
        return False
    if any(f[a] != b for a, b in q.anchors.items()):
        return False
    for u in range(p.n):
        for v in range(u + 1, p.n):
            if p.has_edge(u, v):
                if not h.has_edge(f[u], f[v]):
                    return False
            elif q.mode == INDUCED and h.has_edge(f[u], f[v]):
                return False
    return True


def naive_embedding_oracle(q: EmbeddingQuery) -> int:
    """Count embeddings by trying every injection.  Test use only."""
    if q.pattern.n > 8 or q.host.n > 12:
        raise GraphError("naive oracle limited to patterns <= 8 and hosts <= 12 vertices")
    p, h = q.pattern, q.host
    pedges = p.sorted_edges()
    nonedges = [
        (u, v) for u in range(p.n) for v in range(u + 1, p.n) if not p.has_edge(u, v)
    ]
    total = 0
    for img in permutations(range(h.n), p.n):
        if any(img[a] != b for a, b in q.anchors.items()):
            continue
        if not all(h.has_edge(img[u], img[v]) for u, v in pedges):
            continue
        if q.mode == INDUCED and any(h.has_edge(img[u], img[v]) for u, v in nonedges):
            continue
        total += 1
    return total
