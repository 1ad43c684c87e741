"""Finite simple undirected graphs on dense integer vertices.

Graphs are immutable values.  Every constructor or gluing operation returns a
new graph; vertices are always ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for structurally invalid graphs or arguments."""


class GraphFormatError(GraphError):
    """Raised when the text format cannot be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (bit ``w`` set iff ``w`` is adjacent)."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted vertex lists, ordered by least vertex).

        With ``within`` the components of the induced subgraph on that set are returned.
        """
        allowed = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        out = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled in increasing vertex order.

        Returns the subgraph and the list mapping new index -> old vertex.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep

    def add_edges(self, edges: Iterable[Sequence[int]]) -> Graph:
        return Graph(self.n, self.edges | {_norm(int(u), int(v)) for u, v in edges})

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Apply the vertex permutation ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of the vertices")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class PointedGraph:
    graph: Graph
    basepoint: int

    def __post_init__(self):
        if not 0 <= self.basepoint < self.graph.n:
            raise GraphError(f"basepoint {self.basepoint} outside graph of order {self.graph.n}")

    @property
    def n(self) -> int:
        return self.graph.n


def empty_graph(n: int = 0) -> Graph:
    return Graph(n)


def clique(n: int) -> Graph:
    if n < 1:
        raise GraphError("clique order must be positive")
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    if n < 1:
        raise GraphError("a path needs at least one vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def delete_edge(g: Graph, e: Sequence[int]) -> Graph:
    u, v = e
    key = _norm(u, v)
    if key not in g.edges:
        raise GraphError(f"edge {key} not present")
    return Graph(g.n, g.edges - {key})


def attach_at(g: Graph, v: int, s: PointedGraph) -> Graph:
    """Glue a fresh copy of ``s`` onto ``g`` by identifying ``s.basepoint`` with ``v``.

    The non-basepoint vertices of ``s`` receive indices ``g.n, g.n+1, ...`` in
    their original order.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside graph of order {g.n}")
    mapping = attach_mapping(g.n, v, s)
    new_edges = {_norm(mapping[a], mapping[b]) for a, b in s.graph.edges}
    return Graph(g.n + s.n - 1, g.edges | new_edges)


def attach_mapping(base_n: int, v: int, s: PointedGraph) -> list[int]:
    """Vertex map used by :func:`attach_at` for the copy of ``s``."""
    mapping = []
    nxt = base_n
    for x in range(s.n):
        if x == s.basepoint:
            mapping.append(v)
        else:
            mapping.append(nxt)
            nxt += 1
    return mapping


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    edges = set()
    offset = 0
    for g in gs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


def serialize_graph(g: Graph, basepoint: int | None = None) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    if basepoint is not None:
        lines.append(f"p {basepoint}")
    return "\n".join(lines) + "\n"


def serialize_pointed(pg: PointedGraph) -> str:
    return serialize_graph(pg.graph, pg.basepoint)


def _parse(text: str) -> tuple[Graph, int | None]:
    n = None
    basepoint = None
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag, args = parts[0], parts[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer field in {line!r}") from None
        if n is None:
            if tag != "n" or len(values) != 1:
                raise GraphFormatError(lineno, "expected 'n <vertex_count>' first")
            if values[0] < 0:
                raise GraphFormatError(lineno, "vertex count must be nonnegative")
            n = values[0]
        elif tag == "e":
            if len(values) != 2:
                raise GraphFormatError(lineno, "edge line needs two endpoints")
            u, v = values
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(lineno, f"edge endpoint out of range [0, {n})")
            if u == v:
                raise GraphFormatError(lineno, f"self-loop at {u}")
            key = _norm(u, v)
            if key in edges:
                raise GraphFormatError(lineno, f"duplicate edge {key}")
            edges.add(key)
        elif tag == "p":
            if len(values) != 1:
                raise GraphFormatError(lineno, "basepoint line needs one vertex")
            if basepoint is not None:
                raise GraphFormatError(lineno, "duplicate basepoint line")
            if not 0 <= values[0] < n:
                raise GraphFormatError(lineno, f"basepoint out of range [0, {n})")
            basepoint = values[0]
        elif tag == "n":
            raise GraphFormatError(lineno, "duplicate vertex-count line")
        else:
            raise GraphFormatError(lineno, f"unknown line tag {tag!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'n <vertex_count>' line")
    return Graph(n, frozenset(edges)), basepoint


def parse_graph(text: str) -> Graph:
    """Parse the line format; a ``p`` line, if present, is validated and ignored."""
    return _parse(text)[0]


def parse_pointed_graph(text: str) -> PointedGraph:
    g, basepoint = _parse(text)
    if basepoint is None:
        raise GraphFormatError(0, "pointed graph requires a 'p <basepoint>' line")
    return PointedGraph(g, basepoint)
