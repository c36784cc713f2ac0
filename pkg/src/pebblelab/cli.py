"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 inconclusive (budget), 4 failed
verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from pebblelab import __version__
from pebblelab.bounds import best_bounds
from pebblelab.cache import ResultCache, canonical_json
from pebblelab.domination import gamma
from pebblelab.engine import (
    MoveSystem,
    load_distribution,
    reachable,
    solvable,
    weight,
)
from pebblelab.graphs import (
    DEFAULT_VERTEX_BUDGET,
    GraphError,
    build_family,
    graph_stats,
    load_graph,
    save_graph,
)
from pebblelab.reproduce import verify_paper
from pebblelab.search import InconclusiveError, optimal_number

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_VERIFY = 0, 2, 3, 4


class InputError(Exception):
    pass


def parse_k_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            ks = list(range(int(lo), int(hi) + 1))
        else:
            ks = [int(text)]
    except ValueError:
        raise InputError(f"bad k value {text!r}; expected N or A..B") from None
    if not ks or min(ks) < 0:
        raise InputError(f"bad k range {text!r}")
    return ks


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args):
    if not args.graph:
        raise InputError("--graph FILE is required")
    return load_graph(_read(args.graph), args.vertex_budget)


def _dist(args, g):
    if not args.dist:
        raise InputError("--dist FILE is required")
    p = load_distribution(_read(args.dist))
    if p.n != g.n:
        raise InputError(f"distribution has {p.n} vertices, graph has {g.n}")
    return p


def _system(args) -> MoveSystem:
    return MoveSystem(args.system)


def _cached(args, command: str, g, params: dict, compute):
    """Run ``compute()`` through the result cache when one is configured."""
    root = args.cache_dir or os.environ.get("PEBBLELAB_CACHE")
    if not root or args.no_cache:
        return compute()
    return ResultCache(root).run(command, save_graph(g), params, compute)


def cmd_graph(args) -> int:
    if args.tokens:
        if args.tokens[0] != "family":
            raise InputError(f"unknown graph source {args.tokens[0]!r}; expected 'family'")
        g = build_family(args.tokens[1:], args.vertex_budget)
    else:
        g = _graph(args)
    if args.stats:
        stats = graph_stats(g)
        if args.json:
            print(canonical_json(stats))
        else:
            hist = " ".join(f"{d}:{c}" for d, c in stats["degree_histogram"].items())
            print(f"n={stats['n']} m={stats['m']} diameter={stats['diameter']} degrees={hist}")
        return EXIT_OK
    text = save_graph(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reach(args) -> int:
    g = _graph(args)
    p = _dist(args, g)
    if args.target is None or not 0 <= args.target < g.n:
        raise InputError("--target must name a vertex of the graph")
    system = _system(args)
    res = reachable(g, p, args.target, system)
    out = res.to_json()
    out["system"] = system.value
    out["weight"] = weight(g, p, args.target).to_json()
    print(canonical_json(out))
    return EXIT_OK


def cmd_solvable(args) -> int:
    g = _graph(args)
    p = _dist(args, g)
    system = _system(args)
    res = solvable(g, p, system, short_circuit=False)
    out = res.to_json()
    out["system"] = system.value
    out["size"] = p.size
    print(canonical_json(out))
    return EXIT_OK


def cmd_gamma(args) -> int:
    g = _graph(args)
    ks = parse_k_range(args.k or "1")

    def compute():
        certs = [gamma(g, k)[1].to_json() for k in ks]
        return certs[0] if len(certs) == 1 else {"results": certs}

    print(canonical_json(_cached(args, "gamma", g, {"k": ks}, compute)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _graph(args)
    ks = parse_k_range(args.k) if args.k else None
    graph_id = Path(args.graph).name

    def compute():
        return best_bounds(g, ks, graph_id).to_json()

    print(canonical_json(_cached(args, "bounds", g, {"k": ks, "id": graph_id}, compute)))
    return EXIT_OK


def _cmd_opt(args, system: MoveSystem, command: str) -> int:
    g = _graph(args)
    ks = parse_k_range(args.k_range) if args.k_range else None
    params = {"k_range": ks, "filters": not args.no_filters, "budget": args.budget}

    def compute():
        cert = optimal_number(g, system, args.budget, filters=not args.no_filters, k_range=ks)
        return cert.to_json()

    try:
        result = _cached(args, command, g, params, compute)
    except InconclusiveError as exc:
        print(canonical_json({"inconclusive": True, "lb": exc.lb, "ub": exc.ub,
                              "system": system.value}))
        return EXIT_INCONCLUSIVE
    print(canonical_json(result))
    return EXIT_OK


def cmd_pi_opt(args) -> int:
    return _cmd_opt(args, MoveSystem.PEBBLING, "pi-opt")


def cmd_rho_opt(args) -> int:
    return _cmd_opt(args, MoveSystem.RUBBLING, "rho-opt")


def cmd_verify_paper(args) -> int:
    results = verify_paper(filters=not args.no_filters)
    ok = all(r.passed for r in results)
    if args.json:
        print(canonical_json({"passed": ok, "items": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] ({r.item}) {r.name}")
        failed = [r.item for r in results if not r.passed]
        print("all checks passed" if ok else f"failed items: {failed}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_cache(args) -> int:
    if args.action != "gc":
        raise InputError(f"unknown cache action {args.action!r}")
    root = args.cache_dir or os.environ.get("PEBBLELAB_CACHE")
    if not root:
        raise InputError("no cache directory; pass --cache-dir or set PEBBLELAB_CACHE")
    removed = ResultCache(root).gc(everything=args.all)
    print(canonical_json({"removed": removed}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE")
    common.add_argument("--cache-dir", metavar="PATH")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0, help="accepted for reproducible scripts")
    common.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)

    parser = argparse.ArgumentParser(prog="pebblelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", parents=[common], help="build a graph or print its stats")
    p.add_argument("tokens", nargs="*", help="family <name> <params...>")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_graph)

    for name, func in (("reach", cmd_reach), ("solvable", cmd_solvable)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--dist", metavar="FILE")
        p.add_argument("--system", choices=["pebbling", "rubbling"], default="pebbling")
        if name == "reach":
            p.add_argument("--target", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("gamma", parents=[common], help="distance-k domination number")
    p.add_argument("--k", metavar="N|A..B")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("bounds", parents=[common], help="lower/upper bound report")
    p.add_argument("--k", metavar="N|A..B")
    p.set_defaults(func=cmd_bounds)

    for name, func in (("pi-opt", cmd_pi_opt), ("rho-opt", cmd_rho_opt)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--budget", type=int, default=None, help="max reachability queries")
        p.add_argument("--k-range", metavar="A..B")
        p.add_argument("--no-filters", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction checklist")
    p.add_argument("--no-filters", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("cache", parents=[common])
    p.add_argument("action", help="gc")
    p.add_argument("--all", action="store_true", help="remove every entry")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
