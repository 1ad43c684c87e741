"""Block decomposition, block paths, corners and terminal segments."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphError, PointedGraph


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    # incidence edges (block index, cut vertex)
    block_tree: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "cut_vertices": sorted(self.cut_vertices),
        }


@dataclass(frozen=True)
class BlockPath:
    graph: Graph
    blocks: tuple[frozenset[int], ...]
    cut_vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.blocks)

    def reversed(self) -> BlockPath:
        return BlockPath(self.graph, self.blocks[::-1], self.cut_vertices[::-1])

    def block_graph(self, i: int) -> Graph:
        """Induced graph on block ``B_i`` (1-based)."""
        return self.graph.induced_subgraph(self.blocks[i - 1])[0]

    def to_json(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "cut_vertices": list(self.cut_vertices),
        }


@dataclass(frozen=True)
class Corner:
    root: int
    root_block: frozenset[int]
    vertex_set: frozenset[int]
    as_pointed: PointedGraph
    # as_pointed index -> vertex of the ambient graph
    vertices: tuple[int, ...]


def decompose(g: Graph) -> BlockDecomposition:
    """Blocks via the iterative lowpoint DFS.

    Isolated vertices come out as singleton blocks and bridges as two-vertex
    blocks.  Blocks are sorted by their sorted vertex lists.
    """
    n = g.n
    adj = [sorted(a) for a in g.adjacency]
    disc = [-1] * n
    low = [0] * n
    t = 0
    found: list[frozenset[int]] = []
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        if not adj[root]:
            found.append(frozenset([root]))
            continue
        stack = [(root, -1, iter(adj[root]))]
        estack: list[tuple[int, int]] = []
        while stack:
            u, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    estack.append((u, w))
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, u, iter(adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[u]:
                    estack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                comp: set[int] = set()
                while True:
                    a, b = estack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (p, u):
                        break
                found.append(frozenset(comp))
    blocks = tuple(sorted(found, key=sorted))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    tree = tuple(
        (i, v) for i, b in enumerate(blocks) for v in sorted(b & cuts)
    )
    return BlockDecomposition(blocks, cuts, tree)


def naive_blocks(g: Graph) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Exhaustive block oracle for small graphs.

    Blocks are the inclusion-maximal vertex sets inducing a 2-connected graph or
    a single edge, plus isolated vertices.  Cut vertices are those whose removal
    increases the number of components.
    """
    n = g.n
    if n > 16:
        raise GraphError("naive block oracle limited to 16 vertices")
    adj = g.adj_masks
    full = (1 << n) - 1
    connected = [False] * (1 << n)
    for mask in range(1, 1 << n):
        seen = frontier = mask & -mask
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = adj[b.bit_length() - 1] & mask & ~seen
            seen |= new
            frontier |= new
        connected[mask] = seen == mask
    candidates = []
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size < 2 or not connected[mask]:
            continue
        if size >= 3:
            rest = mask
            ok = True
            while rest:
                b = rest & -rest
                rest ^= b
                if not connected[mask ^ b]:
                    ok = False
                    break
            if not ok:
                continue
        candidates.append(mask)
    candidates.sort(key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in candidates:
        if not any(m & k == m for k in kept):
            kept.append(m)
    blocks = [frozenset(v for v in range(n) if m >> v & 1) for m in kept]
    blocks += [frozenset([v]) for v in range(n) if adj[v] == 0]

    def count_components(mask: int) -> int:
        c = 0
        rest = mask
        while rest:
            seen = frontier = rest & -rest
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                new = adj[b.bit_length() - 1] & mask & ~seen
                seen |= new
                frontier |= new
            rest &= ~seen
            c += 1
        return c

    base = count_components(full)
    cuts = frozenset(v for v in range(n) if count_components(full & ~(1 << v)) > base)
    return sorted(blocks, key=sorted), cuts


def as_block_path(g: Graph) -> BlockPath | None:
    """Block path of a connected graph, or ``None`` if the block tree branches.

    Of the two orientations the one with the lexicographically smaller
    block-size sequence (then sorted block contents) is returned.
    """
    if g.n == 0 or not g.is_connected():
        raise GraphError("block paths are defined for connected graphs only")
    dec = decompose(g)
    blocks = list(dec.blocks)
    if len(blocks) == 1:
        return BlockPath(g, (blocks[0],), ())
    cuts_of = [sorted(b & dec.cut_vertices) for b in blocks]
    if any(len(c) > 2 for c in cuts_of):
        return None
    for v in dec.cut_vertices:
        if sum(1 for b in blocks if v in b) != 2:
            return None
    start = min(i for i, c in enumerate(cuts_of) if len(c) == 1)
    order = [start]
    cut_order = []
    prev_cut = None
    cur = start
    while True:
        nxt_cuts = [c for c in cuts_of[cur] if c != prev_cut]
        if not nxt_cuts:
            break
        c = nxt_cuts[0]
        nxt = next(i for i, b in enumerate(blocks) if c in b and i != cur)
        cut_order.append(c)
        order.append(nxt)
        prev_cut, cur = c, nxt
    fwd = BlockPath(g, tuple(blocks[i] for i in order), tuple(cut_order))
    rev = fwd.reversed()
    return min(fwd, rev, key=_orientation_key)


def _orientation_key(bp: BlockPath):
    return (tuple(len(b) for b in bp.blocks), tuple(tuple(sorted(b)) for b in bp.blocks))


def block_path_from_blocks(g: Graph, blocks, cut_vertices) -> BlockPath:
    """Rebuild a :class:`BlockPath` from explicit lists (used when replaying)."""
    return BlockPath(g, tuple(frozenset(b) for b in blocks), tuple(cut_vertices))


def _make_corner(g: Graph, root: int, vertex_set: frozenset[int], blocks) -> Corner:
    sub, keep = g.induced_subgraph(vertex_set)
    root_block = next(b for b in blocks if root in b and b <= vertex_set)
    return Corner(root, root_block, vertex_set, PointedGraph(sub, keep.index(root)), tuple(keep))


def corners(g: Graph) -> list[Corner]:
    """All corners ``{v} ∪ K`` for cut vertices ``v`` and components ``K`` of ``g - v``."""
    if g.n == 0 or not g.is_connected():
        raise GraphError("corners are defined for connected graphs only")
    dec = decompose(g)
    out = []
    for v in sorted(dec.cut_vertices):
        for comp in g.components(within=set(range(g.n)) - {v}):
            out.append(_make_corner(g, v, frozenset(comp) | {v}, dec.blocks))
    return out


def corner_complement(g: Graph, corner: Corner) -> PointedGraph:
    """Union of the other corners at the same root, pointed at the root."""
    rest = (frozenset(range(g.n)) - corner.vertex_set) | {corner.root}
    sub, keep = g.induced_subgraph(rest)
    return PointedGraph(sub, keep.index(corner.root))


def segment_vertices(bp: BlockPath, j: int, side: str) -> tuple[list[int], int]:
    """Vertex set and basepoint of the terminal segment ``R_j`` or ``L_j``."""
    ell = bp.length
    if side == "right":
        if not 2 <= j <= ell:
            raise GraphError(f"right segment index must lie in [2, {ell}]")
        chosen = bp.blocks[j - 1:]
        base = bp.cut_vertices[j - 2]
    elif side == "left":
        if not 1 <= j <= ell - 1:
            raise GraphError(f"left segment index must lie in [1, {ell - 1}]")
        chosen = bp.blocks[:j]
        base = bp.cut_vertices[j - 1]
    else:
        raise GraphError(f"side must be 'left' or 'right', not {side!r}")
    return sorted(frozenset().union(*chosen)), base


def terminal_segments(bp: BlockPath, j: int, side: str) -> PointedGraph:
    verts, base = segment_vertices(bp, j, side)
    sub, keep = bp.graph.induced_subgraph(verts)
    return PointedGraph(sub, keep.index(base))


@dataclass(frozen=True)
class PathlikeWitness:
    core: tuple[int, ...]
    core_block_path: BlockPath
    # (attachment vertex in the core, path vertices from the attached end outwards)
    pendant_paths: tuple[tuple[int, tuple[int, ...]], ...]
    attaches_at_cut_vertex: bool
    attaches_at_non_cut_vertex: bool

    def to_json(self) -> dict:
        sub_bp = self.core_block_path
        return {
            "core": list(self.core),
            "core_blocks": [sorted(self.core[i] for i in b) for b in sub_bp.blocks],
            "pendant_paths": [{"attach": a, "path": list(p)} for a, p in self.pendant_paths],
            "attaches_at_cut_vertex": self.attaches_at_cut_vertex,
            "attaches_at_non_cut_vertex": self.attaches_at_non_cut_vertex,
        }


def _pendant_path(g: Graph, comp: list[int], core: set[int]):
    """Return (attach, ordered path) if ``comp`` hangs off the core as a pendant path."""
    cs = set(comp)
    inner_edges = sum(1 for v in comp for w in g.adjacency[v] if w in cs) // 2
    if inner_edges != len(comp) - 1:
        return None
    if any(sum(1 for w in g.adjacency[v] if w in cs) > 2 for v in comp):
        return None
    links = [(v, w) for v in comp for w in g.adjacency[v] if w in core]
    if len(links) != 1:
        return None
    end, attach = links[0]
    if len(comp) > 1 and sum(1 for w in g.adjacency[end] if w in cs) != 1:
        return None
    order = [end]
    prev = None
    cur = end
    while len(order) < len(comp):
        nxt = next(w for w in g.adjacency[cur] if w in cs and w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return attach, tuple(order)


def is_pathlike(g: Graph, max_free_vertices: int = 20) -> tuple[bool, PathlikeWitness | None]:
    """Search for a block-path core with at most one pendant path per core vertex.

    Cores are tried from largest to smallest, so a block path is its own
    witness with no pendant paths.
    """
    if g.n == 0 or not g.is_connected():
        raise GraphError("pathlike test needs a connected graph")
    dec = decompose(g)
    forced = set()
    for b in dec.blocks:
        if len(b) >= 3:
            forced |= b
    free = [v for v in range(g.n) if v not in forced]
    if len(free) > max_free_vertices:
        raise GraphError(f"pathlike search limited to {max_free_vertices} removable vertices")
    for r in range(len(free) + 1):
        for removed in combinations(free, r):
            core = set(range(g.n)) - set(removed)
            if not core:
                continue
            sub, keep = g.induced_subgraph(core)
            if not sub.is_connected():
                continue
            bp = as_block_path(sub)
            if bp is None:
                continue
            pendants = []
            for comp in g.components(within=removed):
                pp = _pendant_path(g, comp, core)
                if pp is None:
                    break
                pendants.append(pp)
            else:
                attaches = [a for a, _ in pendants]
                if len(set(attaches)) != len(attaches):
                    continue
                core_cuts = {keep[c] for c in bp.cut_vertices}
                witness = PathlikeWitness(
                    tuple(keep),
                    bp,
                    tuple(sorted(pendants)),
                    any(a in core_cuts for a in attaches),
                    any(a not in core_cuts for a in attaches),
                )
                return True, witness
    return False, None

