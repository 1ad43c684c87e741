"""Greedy high-girth k-uniform hypergraphs with a prescribed containment shape.

Hyperedge ``E_i`` always contains ``N+i-1`` and ``N+i`` and lies inside
``[0, N+i]``; no vertex lies in more than ``k`` hyperedges; the Berge girth is
at least ``g``.  Every build is certified by independent checks before it is
returned.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

FORMULA = "formula"
ADAPTIVE = "adaptive"

# largest vertex count a build may allocate
MAX_VERTICES = 5_000_000
MAX_DOUBLINGS = 24


class HypergraphBuildError(RuntimeError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    vertex_count: int
    hyperedges: tuple[tuple[int, ...], ...]
    N: int
    k: int

    def degree(self) -> list[int]:
        deg = [0] * self.vertex_count
        for e in self.hyperedges:
            for v in e:
                deg[v] += 1
        return deg

    def serialize(self) -> str:
        lines = [f"N {self.N} k {self.k}"]
        lines += [" ".join(map(str, e)) for e in self.hyperedges]
        return "\n".join(lines) + "\n"


def berge_girth(edges, vertex_count: int | None = None) -> float:
    """Length of the shortest Berge cycle, or ``math.inf``.

    A Berge cycle of length ``n`` is a cycle of length ``2n`` in the
    vertex/hyperedge incidence graph, so we run the shortest-cycle BFS there,
    rooted only at hyperedge nodes (every cycle passes through one).
    """
    edges = [tuple(e) for e in edges]
    if vertex_count is None:
        vertex_count = max((max(e) for e in edges if e), default=-1) + 1
    m = len(edges)
    # incidence graph: hyperedge j -> node j, vertex v -> node m + v
    adj: list[list[int]] = [[] for _ in range(m + vertex_count)]
    for j, e in enumerate(edges):
        for v in e:
            adj[j].append(m + v)
            adj[m + v].append(j)
    best = math.inf
    for root in range(m):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return math.inf if best == math.inf else best // 2


def formula_N(k: int, g: int) -> int:
    """``(k-1) * B + 1`` with ``B`` the radius-``g`` ball bound at degree ``k(k-1)``."""
    if k < 2 or g < 2:
        raise ValueError("need k >= 2 and g >= 2")
    d = k * (k - 1)
    ball = sum(d**j for j in range(g + 1))
    return (k - 1) * ball + 1


def _ball(adj: list[set[int]], src: int, radius: int) -> set[int]:
    seen = {src}
    frontier = [src]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return seen


def _greedy(k: int, g: int, M: int, N: int) -> tuple[tuple[int, ...], ...] | None:
    """Run the greedy construction; ``None`` if some step finds no valid X."""
    total = N + M
    conflict: list[set[int]] = [set() for _ in range(total)]
    load = [0] * total
    edges = []
    for i in range(M):
        top = N + i - 1
        chosen = [top]
        blocked = _ball(conflict, top, g)
        for v in range(top):
            if len(chosen) == k - 1:
                break
            if load[v] >= k or v in blocked:
                continue
            chosen.append(v)
            blocked |= _ball(conflict, v, g)
        if len(chosen) < k - 1:
            return None
        e = tuple(sorted(chosen + [N + i]))
        for a in e:
            load[a] += 1
            conflict[a].update(b for b in e if b != a)
        edges.append(e)
    return tuple(edges)


def build(k: int, g: int, M: int, mode: str = ADAPTIVE, start_N: int | None = None) -> Hypergraph:
    if k < 2 or g < 2 or M < 1:
        raise ValueError("need k >= 2, g >= 2 and M >= 1")
    if mode == FORMULA:
        N = formula_N(k, g)
        if N + M > MAX_VERTICES:
            raise HypergraphBuildError(
                f"formula mode needs N = {N} (> {MAX_VERTICES - M} allowed); use adaptive mode"
            )
        edges = _greedy(k, g, M, N)
        if edges is None:
            raise HypergraphBuildError(f"greedy step failed with formula N = {N}")
    elif mode == ADAPTIVE:
        N = start_N if start_N is not None else k * g
        tried = []
        for _ in range(MAX_DOUBLINGS):
            tried.append(N)
            if N + M > MAX_VERTICES:
                break
            edges = _greedy(k, g, M, N)
            if edges is not None:
                break
            N *= 2
        else:
            edges = None
        if edges is None:
            raise HypergraphBuildError(f"adaptive build failed; tried N in {tried}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    h = Hypergraph(N + M, edges, N, k)
    report = certify(h, g)
    if not all(report.values()):
        raise HypergraphBuildError(f"certification failed: {report}")
    return h


def certify(h: Hypergraph, g: int) -> dict[str, bool]:
    """The four post-hoc checks plus the pairwise-intersection cross-check."""
    uniform = all(len(set(e)) == h.k == len(e) for e in h.hyperedges)
    shape = all(
        (h.N + i - 1) in e and (h.N + i) in e and min(e) >= 0 and max(e) == h.N + i
        for i, e in enumerate(h.hyperedges)
    )
    degree = all(d <= h.k for d in h.degree())
    girth = berge_girth(h.hyperedges, h.vertex_count)
    pairwise = True
    if girth > 2:
        seen: dict[tuple[int, int], int] = {}
        for j, e in enumerate(h.hyperedges):
            for a in e:
                for b in e:
                    if a < b:
                        if (a, b) in seen:
                            pairwise = False
                        seen[(a, b)] = j
    return {
        "uniform": uniform,
        "girth": girth >= g,
        "shape": shape,
        "degree": degree,
        "pairwise_meet": pairwise,
    }


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [l.split() for l in text.splitlines() if l.strip() and not l.startswith("#")]
    head = lines[0]
    if len(head) != 4 or head[0] != "N" or head[2] != "k":
        raise ValueError("expected header 'N <n> k <k>'")
    N, k = int(head[1]), int(head[3])
    edges = tuple(tuple(sorted(int(x) for x in l)) for l in lines[1:])
    return Hypergraph(N + len(edges), edges, N, k)
