"""Command-line entry point: ``cfree <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path

from .blocks import as_block_path
from .classifier import EXISTS, NOT_EXISTS, OPEN, classify, main_theorem_reduction_demo
from .embedding import INDUCED, SUBGRAPH, EmbeddingQuery, SearchBudgetExceeded, find_embedding
from .graph import GraphError, parse_graph, parse_pointed_graph, serialize_graph
from .hypergraph import ADAPTIVE, FORMULA, HypergraphBuildError, build
from .pruning import (
    PruningSpec,
    default_sampler,
    detachability_stress,
    detachability_witness,
    detachment_spec,
    pruned_corners,
    prune,
)
from .witness import (
    ConstructionInapplicable,
    check_cfree,
    check_rigidity,
    distinguisher_copy,
    instantiate,
    make_family,
    parse_eps,
    random_eps,
)

EXIT_ERROR = 3
VERDICT_CODES = {EXISTS: 0, NOT_EXISTS: 1, OPEN: 2}


def _read_graph(path: str):
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_embed(args) -> int:
    pattern, host = _read_graph(args.pattern), _read_graph(args.host)
    anchors = {}
    for item in args.anchor:
        u, _, v = item.partition("=")
        anchors[int(u)] = int(v)
    q = EmbeddingQuery(pattern, host, INDUCED if args.induced else SUBGRAPH, anchors)
    f = find_embedding(q)
    if f is None:
        print("none")
        return 1
    print(" ".join(f"{a}={b}" for a, b in sorted(f.items())))
    return 0


def _classify_file(path: Path):
    return classify(parse_graph(path.read_text(encoding="utf-8")))


def cmd_classify(args) -> int:
    if args.dir:
        rows = []
        worst = 0
        for path in sorted(p for p in Path(args.dir).iterdir() if p.is_file()):
            try:
                v = _classify_file(path)
                rows.append((path.name, v.outcome, v.rule, v.note or ""))
            except (GraphError, ValueError) as exc:
                rows.append((path.name, "Error", "", str(exc)))
                worst = EXIT_ERROR
        out = open(args.summary, "w", newline="") if args.summary else sys.stdout
        try:
            w = csv.writer(out)
            w.writerow(["file", "outcome", "rule", "note"])
            w.writerows(rows)
        finally:
            if args.summary:
                out.close()
        return worst
    v = _classify_file(Path(args.input))
    if args.trace:
        Path(args.trace).write_text(v.dumps() + "\n", encoding="utf-8")
    line = f"{v.outcome} ({v.rule})"
    if v.note:
        line += f": {v.note}"
    print(line)
    return VERDICT_CODES[v.outcome]


def cmd_prune(args) -> int:
    c = _read_graph(args.constraint)
    spec = PruningSpec([parse_pointed_graph(Path(p).read_text(encoding="utf-8")) for p in args.sigma])
    result = prune(c, spec)
    sys.stdout.write(serialize_graph(result))
    if args.report:
        report = {
            "pruned_corners": [
                {"root": k.root, "vertices": sorted(k.vertex_set)} for k in pruned_corners(c, spec)
            ],
            "result_order": result.n,
        }
        Path(args.report).write_text(_dump(report) + "\n", encoding="utf-8")
    return 0


def cmd_detach(args) -> int:
    c = _read_graph(args.constraint)
    bp = as_block_path(c)
    if bp is None:
        raise GraphError("constraint is not a block path")
    report: dict = {"block": args.block}
    if 1 < args.block < bp.length:
        q, f = detachability_witness(bp, args.block)
        report["hypothesis"] = f is not None
        report["hypothesis_embedding"] = None if f is None else [[a, b] for a, b in sorted(f.items())]
    else:
        report["hypothesis"] = None
    spec = detachment_spec(bp, args.block)
    stress = detachability_stress(
        c, spec, default_sampler(args.max_n), trials=args.trials, seed=args.seed
    )
    report["detached_root"] = spec.corner_root
    report["residue"] = serialize_graph(spec.residue)
    report["stress"] = stress.to_json()
    print(_dump(report))
    return 0 if stress.violations == 0 else 1


def cmd_hypergraph(args) -> int:
    h = build(args.k, args.g, args.edges, args.mode)
    text = h.serialize()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _eps_from_arg(spec: str, M: int, seed: int) -> tuple[int, ...]:
    if spec == "all-zero":
        return (0,) * M
    if spec == "all-one":
        return (1,) * M
    if spec == "random":
        return random_eps(random.Random(seed), M)
    return parse_eps(spec, M)


def cmd_witness(args) -> int:
    c = _read_graph(args.constraint)
    fam = make_family(c, args.edges)
    eps = _eps_from_arg(args.eps, args.edges, args.seed)
    graph = instantiate(fam, eps)
    report: dict = {
        "N": fam.hypergraph.N,
        "k": fam.hypergraph.k,
        "girth": fam.girth,
        "eps": "".join(map(str, eps)),
        "vertices": graph.n,
        "edges": graph.edge_count,
    }
    ok = True
    if args.check == "cfree":
        report["cfree"] = ok = check_cfree(fam, eps)
    elif args.check == "distinguish":
        results = {}
        for t, bit in enumerate(eps):
            if bit == 0:
                results[str(t)] = distinguisher_copy(fam, eps, t) is not None
        report["distinguisher"] = results
        ok = all(results.values())
    elif args.check == "rigidity":
        r = check_rigidity(fam, eps, args.trials)
        report["rigidity"] = r.to_json()
        ok = r.ok
    text = serialize_graph(graph)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    payload = _dump(report) + "\n"
    if args.report:
        Path(args.report).write_text(payload, encoding="utf-8")
    else:
        sys.stderr.write(payload)
    return 0 if ok else 1


def cmd_demo(args) -> int:
    print(_dump(main_theorem_reduction_demo(_read_graph(args.constraint)).to_json()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="embedding queries")
    vsub = verify.add_subparsers(dest="verify_command", required=True)
    embed = vsub.add_parser("embed", help="find an embedding of a pattern into a host")
    embed.add_argument("--pattern", required=True)
    embed.add_argument("--host", required=True)
    embed.add_argument("--induced", action="store_true")
    embed.add_argument("--anchor", action="append", default=[], metavar="U=V")
    embed.set_defaults(func=cmd_embed)

    cl = sub.add_parser("classify", help="verdict on universal C-free graphs")
    src = cl.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input")
    src.add_argument("--dir")
    cl.add_argument("--trace", help="write the JSON trace here")
    cl.add_argument("--summary", help="CSV summary for --dir mode")
    cl.set_defaults(func=cmd_classify)

    pr = sub.add_parser("prune", help="corner pruning")
    pr.add_argument("--constraint", required=True)
    pr.add_argument("--sigma", nargs="+", required=True)
    pr.add_argument("--report")
    pr.set_defaults(func=cmd_prune)

    de = sub.add_parser("detach", help="detachability check at a block")
    de.add_argument("--constraint", required=True)
    de.add_argument("--block", type=int, required=True)
    de.add_argument("--trials", type=int, default=200)
    de.add_argument("--seed", type=int, default=0)
    de.add_argument("--max-n", type=int, default=8)
    de.set_defaults(func=cmd_detach)

    hy = sub.add_parser("hypergraph", help="high-girth hypergraph construction")
    hy.add_argument("--k", type=int, required=True)
    hy.add_argument("--g", type=int, required=True)
    hy.add_argument("--edges", type=int, required=True)
    hy.add_argument("--mode", choices=[ADAPTIVE, FORMULA], default=ADAPTIVE)
    hy.add_argument("--out")
    hy.set_defaults(func=cmd_hypergraph)

    wi = sub.add_parser("witness", help="instantiate and check the witness family")
    wi.add_argument("--constraint", required=True)
    wi.add_argument("--edges", type=int, required=True)
    wi.add_argument("--eps", default="all-one", help="bit string, random, all-zero or all-one")
    wi.add_argument("--seed", type=int, default=0)
    wi.add_argument("--check", choices=["cfree", "distinguish", "rigidity"])
    wi.add_argument("--trials", type=int, default=2, help="hyperedges examined by --check rigidity")
    wi.add_argument("--out")
    wi.add_argument("--report")
    wi.set_defaults(func=cmd_witness)

    dm = sub.add_parser("demo", help="replay the block-path reduction chain")
    dm.add_argument("--constraint", required=True)
    dm.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, ConstructionInapplicable, HypergraphBuildError,
            SearchBudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
