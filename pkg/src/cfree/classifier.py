"""Verdicts on the existence of a universal C-free graph, with replayable traces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .blocks import (
    BlockPath,
    as_block_path,
    block_path_from_blocks,
    decompose,
    is_pathlike,
    segment_vertices,
    terminal_segments,
)
from .embedding import EmbeddingQuery, embeds, find_embedding, is_isomorphic, is_valid_embedding
from .graph import Graph, GraphError, parse_graph, serialize_graph
from .pruning import PruningSpec, detachability_witness, prune
from .witness import ConstructionInapplicable, two_block_constraint

EXISTS = "Exists"
NOT_EXISTS = "NotExists"
OPEN = "Open"

CITE_COMPLETE = "Henson: for complete C a universal C-free graph exists"
CITE_FK = "Furedi-Komjath: a 2-connected C with a weakly universal C-free graph is complete"
CITE_TREE = "Tree constraints: a tree C with a universal C-free graph is a path or a near path"
CITE_MAIN = "Main theorem: a block path C with a weakly universal C-free graph has complete blocks"
CITE_NORMALIZE = "Main theorem, normalisation: |B1| <= |Bl|, and B1 ~ Bl or Bl not a subgraph of B1"
CITE_TWO_BLOCKS = "Two-block case: hypergraph witness family forces the smaller block complete"
CITE_CORNER_5 = "Corner pruning, condition (5): (B1, B2 - v2) embeds into (B2 - v1, B3, ..., Bl)"
CITE_SYMMETRIC = "Symmetric local pruning: L_v - v embeds into R_u - u, so (v, R_v) is detachable"
CITE_OPEN_PATHLIKE = "Open: block paths with all blocks complete remain unanalysed"
CITE_CONJECTURES = "Block-path and pathlike conjectures (conjectural, not verdicts)"

TERMINAL_RULES = {"fk-2-connected", "main-theorem", "tree"}


@dataclass
class Step:
    rule: str
    citation: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "data": self.data}


@dataclass
class Verdict:
    outcome: str
    graph: Graph
    trace: list[Step] = field(default_factory=list)
    note: str | None = None
    conjectural: dict | None = None

    @property
    def rule(self) -> str:
        return self.trace[-1].rule if self.trace else ""

    def to_json(self) -> dict:
        out = {
            "outcome": self.outcome,
            "rule": self.rule,
            "graph": serialize_graph(self.graph),
            "trace": [s.to_json() for s in self.trace],
        }
        if self.note:
            out["note"] = self.note
        if self.conjectural is not None:
            out["conjectural"] = self.conjectural
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> Verdict:
        steps = [Step(s["rule"], s["citation"], s["data"]) for s in data["trace"]]
        return cls(data["outcome"], parse_graph(data["graph"]), steps, data.get("note"),
                   data.get("conjectural"))


def is_tree(g: Graph) -> bool:
    return g.is_connected() and g.edge_count == g.n - 1


def is_path_graph(g: Graph) -> bool:
    return is_tree(g) and max(g.degrees, default=0) <= 2


def is_near_path(g: Graph) -> bool:
    """A path, or a tree that becomes a path after deleting one leaf."""
    if not is_tree(g):
        return False
    if is_path_graph(g):
        return True
    for leaf in range(g.n):
        if g.degrees[leaf] == 1:
            rest, _ = g.induced_subgraph(set(range(g.n)) - {leaf})
            if is_path_graph(rest):
                return True
    return False


def _embedding_step(rule: str, citation: str, pattern: Graph, host: Graph, f) -> Step:
    return Step(rule, citation, {
        "pattern": serialize_graph(pattern),
        "host": serialize_graph(host),
        "embedding": None if f is None else [[a, b] for a, b in sorted(f.items())],
        "holds": f is not None,
    })


def normalize_block_path(bp: BlockPath) -> BlockPath:
    """Orient so ``|B1| <= |Bl|`` and, on equal sizes, ``Bl`` embeds in ``B1`` only if isomorphic."""
    first, last = bp.block_graph(1), bp.block_graph(bp.length)
    if first.n > last.n:
        return bp.reversed()
    if first.n == last.n and embeds(last, first) and not is_isomorphic(last, first):
        return bp.reversed()
    return bp


def condition_five(bp: BlockPath):
    """Query and least embedding for ``(B1, B2 - v2)`` into ``(B2 - v1, B3, ..., Bl)``."""
    return detachability_witness(bp, 2)


def _block_path_step(bp: BlockPath) -> Step:
    complete = [bp.block_graph(i).is_complete() for i in range(1, bp.length + 1)]
    return Step("block-path", "tree of blocks is a path", {
        "blocks": [sorted(b) for b in bp.blocks],
        "cut_vertices": list(bp.cut_vertices),
        "complete": complete,
    })


def classify(c: Graph) -> Verdict:
    if c.n == 0 or not c.is_connected():
        raise GraphError("classification needs a nonempty connected graph")
    if c.is_complete():
        return Verdict(EXISTS, c, [Step("complete", CITE_COMPLETE, {"order": c.n})])
    dec = decompose(c)
    if len(dec.blocks) == 1:
        return Verdict(NOT_EXISTS, c, [
            Step("fk-2-connected", CITE_FK, {"order": c.n, "edges": c.edge_count, "complete": False}),
        ])
    if is_tree(c):
        path_like = is_path_graph(c)
        near = is_near_path(c)
        data = {"path": path_like, "near_path": near}
        if near:
            note = ("tree rule gives only necessity: paths and near paths are not excluded, "
                    "and existence is not decided here")
            return Verdict(OPEN, c, [Step("tree-open", CITE_TREE, data)], note=note)
        return Verdict(NOT_EXISTS, c, [Step("tree", CITE_TREE, data)])
    bp = as_block_path(c)
    if bp is not None:
        complete = [bp.block_graph(i).is_complete() for i in range(1, bp.length + 1)]
        if not all(complete):
            return Verdict(NOT_EXISTS, c, _main_theorem_trace(bp))
        return Verdict(OPEN, c, [_block_path_step(bp), Step("open-complete-block-path", CITE_OPEN_PATHLIKE, {})])
    pathlike, witness = is_pathlike(c)
    incomplete = [sorted(b) for b in dec.blocks if not c.induced_subgraph(b)[0].is_complete()]
    conj = {
        "status": "conjectural",
        "pathlike": pathlike,
        "pathlike_witness": witness.to_json() if witness else None,
        "block_path_conjecture_predicts": NOT_EXISTS if incomplete else None,
        "pathlike_predicts": NOT_EXISTS if not pathlike else None,
        "incomplete_blocks": incomplete,
    }
    return Verdict(OPEN, c, [Step("conjectural", CITE_CONJECTURES, {"status": "conjectural"})],
                   conjectural=conj)


def _main_theorem_trace(bp: BlockPath) -> list[Step]:
    steps = [_block_path_step(bp)]
    nbp = normalize_block_path(bp)
    steps.append(Step("normalize", CITE_NORMALIZE, {
        "blocks": [sorted(b) for b in nbp.blocks],
        "cut_vertices": list(nbp.cut_vertices),
        "reversed": nbp.blocks != bp.blocks,
    }))
    if nbp.length == 2:
        try:
            two_block_constraint(nbp.graph)
            applicable = True
        except ConstructionInapplicable:
            applicable = False
        steps.append(Step("two-blocks", CITE_TWO_BLOCKS, {"witness_family_applicable": applicable}))
    elif nbp.length >= 3:
        q, f = condition_five(nbp)
        steps.append(_embedding_step("corner-condition-5", CITE_CORNER_5, q.pattern, q.host, f))
        if f is not None:
            q2, f2 = detachability_witness(nbp, 2)
            step = _embedding_step("symmetric-local-pruning", CITE_SYMMETRIC, q2.pattern, q2.host, f2)
            residual, _ = nbp.graph.induced_subgraph(
                set(segment_vertices(nbp, 2, "left")[0]) - {nbp.cut_vertices[1]}
            )
            step.data["detached_root"] = nbp.cut_vertices[1]
            step.data["residual"] = serialize_graph(residual)
            steps.append(step)
    incomplete = [i + 1 for i in range(nbp.length) if not nbp.block_graph(i + 1).is_complete()]
    steps.append(Step("main-theorem", CITE_MAIN, {"incomplete_blocks": incomplete}))
    return steps


def replay_trace(v: Verdict) -> bool:
    """Re-execute every checkable step of a verdict against the graph it carries."""
    c = v.graph
    try:
        fresh = classify(c)
    except GraphError:
        return False
    if fresh.outcome != v.outcome or [s.rule for s in fresh.trace] != [s.rule for s in v.trace]:
        return False
    bp = None
    for step in v.trace:
        d = step.data
        if step.rule == "complete":
            if not c.is_complete() or d.get("order") != c.n:
                return False
        elif step.rule == "fk-2-connected":
            if len(decompose(c).blocks) != 1 or c.is_complete():
                return False
        elif step.rule in ("tree", "tree-open"):
            if d.get("path") != is_path_graph(c) or d.get("near_path") != is_near_path(c):
                return False
        elif step.rule in ("block-path", "normalize"):
            try:
                cand = block_path_from_blocks(c, d["blocks"], d["cut_vertices"])
            except (KeyError, TypeError):
                return False
            if not _is_block_path_of(c, cand):
                return False
            if step.rule == "block-path":
                complete = [cand.block_graph(i).is_complete() for i in range(1, cand.length + 1)]
                if d.get("complete") != complete:
                    return False
            bp = cand
        elif step.rule in ("corner-condition-5", "symmetric-local-pruning"):
            if bp is None or not _replay_embedding(d):
                return False
            q, f = detachability_witness(bp, 2)
            if serialize_graph(q.pattern) != d["pattern"] or serialize_graph(q.host) != d["host"]:
                return False
            if (f is not None) != d["holds"]:
                return False
        elif step.rule == "main-theorem":
            if bp is None:
                return False
            incomplete = [i + 1 for i in range(bp.length) if not bp.block_graph(i + 1).is_complete()]
            if not incomplete or incomplete != d.get("incomplete_blocks"):
                return False
        elif step.rule == "two-blocks":
            if bp is None or bp.length != 2:
                return False
    return json.dumps(fresh.to_json(), sort_keys=True) == json.dumps(v.to_json(), sort_keys=True)


def _is_block_path_of(c: Graph, bp: BlockPath) -> bool:
    """Independent check that ``bp`` lists the blocks of ``c`` in path order."""
    dec = decompose(c)
    if sorted(map(sorted, bp.blocks)) != sorted(map(sorted, dec.blocks)):
        return False
    if len(bp.cut_vertices) != bp.length - 1:
        return False
    for i, v in enumerate(bp.cut_vertices):
        if bp.blocks[i] & bp.blocks[i + 1] != {v}:
            return False
    for i, j in combinations(range(bp.length), 2):
        if j > i + 1 and bp.blocks[i] & bp.blocks[j]:
            return False
    return True


def _replay_embedding(d: dict) -> bool:
    pattern, host = parse_graph(d["pattern"]), parse_graph(d["host"])
    q = EmbeddingQuery(pattern, host)
    if d["embedding"] is None:
        return find_embedding(q) is None and not d["holds"]
    f = {a: b for a, b in d["embedding"]}
    return d["holds"] and is_valid_embedding(q, f)


@dataclass
class ReductionReport:
    applicable: bool
    stage: str
    steps: list[dict] = field(default_factory=list)
    conditions: dict = field(default_factory=dict)
    residual: str | None = None
    residual_blocks: list | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "stage": self.stage,
            "steps": self.steps,
            "conditions": self.conditions,
            "residual": self.residual,
            "residual_blocks": self.residual_blocks,
            "reason": self.reason,
        }


def corner_conditions(bp: BlockPath) -> dict[str, bool]:
    """Conditions (1)-(5) of the corner-pruning reduction, evaluated on ``bp``."""
    ell = bp.length
    complete = [bp.block_graph(i).is_complete() for i in range(1, ell + 1)]
    first, last = bp.block_graph(1), bp.block_graph(ell)
    return {
        "1_first_block_incomplete": not complete[0],
        "2_length_at_least_3": ell >= 3,
        "3_middle_blocks_complete": all(complete[1:-1]),
        "4_last_complete_unless_embeds_in_first": embeds(last, first) or complete[-1],
        "5_left_embeds_right": ell >= 3 and condition_five(bp)[1] is not None,
    }


def main_theorem_reduction_demo(c: Graph) -> ReductionReport:
    """Replay the reduction chain on a concrete block path with an incomplete block."""
    bp = as_block_path(c)
    if bp is None:
        raise GraphError("demo needs a block path")
    complete = [bp.block_graph(i).is_complete() for i in range(1, bp.length + 1)]
    if all(complete):
        raise GraphError("demo needs a block path with an incomplete block")
    nbp = normalize_block_path(bp)
    if nbp.length == 1:
        return ReductionReport(True, "two-connected", reason="single incomplete block")
    if nbp.length == 2:
        report = ReductionReport(True, "witness-family")
        report.residual = serialize_graph(c)
        report.residual_blocks = [sorted(b) for b in nbp.blocks]
        report.steps.append(_residual_route(c))
        return report
    report = ReductionReport(True, "chain")
    report.conditions = corner_conditions(nbp)
    if not all(report.conditions.values()):
        failed = [k for k, ok in report.conditions.items() if not ok]
        report.reason = f"c is not a minimal counterexample shape: failed {failed}"
    # prune the first block as a corner
    corner_b1 = terminal_segments(nbp, 1, "left")
    pruned = prune(c, PruningSpec([corner_b1]))
    report.steps.append({
        "step": "corner-pruning",
        "sigma": serialize_graph(corner_b1.graph, corner_b1.basepoint),
        "pruned": serialize_graph(pruned),
    })
    q, f = condition_five(nbp)
    report.steps.append({
        "step": "condition-5",
        "holds": f is not None,
        "embedding": None if f is None else [[a, b] for a, b in sorted(f.items())],
        "verified": f is not None and is_valid_embedding(q, f),
    })
    if f is None:
        report.stage = "stopped"
        return report
    q2, f2 = detachability_witness(nbp, 2)
    report.steps.append({
        "step": "detachability-hypothesis",
        "block": 2,
        "holds": f2 is not None,
        "embedding": [[a, b] for a, b in sorted(f2.items())],
        "verified": is_valid_embedding(q2, f2),
        "detached_root": nbp.cut_vertices[1],
    })
    left, _ = segment_vertices(nbp, 2, "left")
    residual, keep = c.induced_subgraph(set(left) - {nbp.cut_vertices[1]})
    report.residual = serialize_graph(residual)
    rbp = as_block_path(residual)
    report.residual_blocks = None if rbp is None else [sorted(b) for b in rbp.blocks]
    report.steps.append(_residual_route(residual))
    report.stage = "residual"
    return report


def _residual_route(residual: Graph) -> dict:
    """Which argument finishes the residual constraint."""
    bp = as_block_path(residual)
    if bp is None:
        return {"step": "residual", "route": "unexpected-shape"}
    if bp.length == 1:
        route = "complete" if residual.is_complete() else "two-connected-rule"
        return {"step": "residual", "route": route}
    try:
        tc = two_block_constraint(residual)
        return {"step": "residual", "route": "witness-family", "n1": tc.n1, "n2": tc.n2}
    except ConstructionInapplicable:
        pass
    # smaller block complete: prune it as a corner and look again
    small = terminal_segments(normalize_block_path(bp), 1, "left")
    pruned = prune(residual, PruningSpec([small]))
    return {
        "step": "residual",
        "route": "prune-complete-end-block",
        "pruned": serialize_graph(pruned),
        "then": _residual_route(pruned) if pruned.n > 1 else {"route": "trivial"},
    }
