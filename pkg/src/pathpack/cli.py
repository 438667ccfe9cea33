"""Command-line entry points: solve, oracle, gen, bench.

Exit codes: 0 = yes, 1 = no, 2 = timeout, 64 = usage error, 65 = malformed
graph file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence


from .config import (CONFIG_NAMES, HEURISTIC_CODES, SolverConfig,
                     config_from_name)
from .graph import (Graph, GraphFormatError, Workspace, format_graph,
                    load_graph, random_gnp)
from .kernels import BACKEND
from .model import PackingInstance
from .oracle import oracle_decide
from .search import solve

__all__ = ["main", "entry", "CSV_COLUMNS"]

EXIT_YES = 0
EXIT_NO = 1
EXIT_TIMEOUT = 2
EXIT_USAGE = 64
EXIT_BAD_FILE = 65

CSV_COLUMNS = [
    "graph", "s", "t", "k", "ell", "config", "decision", "solved_by",
    "nodes", "br1", "br2", "br3", "prunes_len", "prunes_bcpl", "prunes_bsp",
    "bfi_recorded", "bfi_masked", "dms_fired", "max_depth",
    "n_before", "n_after", "m_before", "m_after", "wall_ms",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 64
        raise UsageError(message)


def _bool_flag(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file (1-based edge list)")
    p.add_argument("--s", type=int, required=True, help="source terminal (1-based)")
    p.add_argument("--t", type=int, required=True, help="target terminal (1-based)")
    p.add_argument("--k", type=int, required=True, help="number of disjoint paths")
    p.add_argument("--ell", type=int, required=True, help="per-path length bound")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--heur", default=None, metavar="LIST",
                   help="comma list of heuristics to enable "
                        f"({','.join(HEURISTIC_CODES)}); default: "
                        "b-sp,b-fi,d-ms,c-dist,c-pl")
    p.add_argument("--no-preprocess", action="store_true",
                   help="skip the neighborhood/degree-1 graph reduction")
    p.add_argument("--no-trivial", action="store_true",
                   help="skip root trivial-instance detection")
    p.add_argument("--dms-bare-lists-only", type=_bool_flag, default=True,
                   metavar="BOOL",
                   help="restrict the separator check to nodes whose pending "
                        "lists are all bare (default: true)")
    p.add_argument("--timeout-ms", type=int, default=None)


def _config_from_args(args) -> SolverConfig:
    base = SolverConfig(
        preprocess=not args.no_preprocess,
        trivial_detection=not args.no_trivial,
        dms_bare_lists_only=args.dms_bare_lists_only,
        timeout_ms=args.timeout_ms,
        rng_seed=getattr(args, "seed", 0) or 0,
    )
    if args.heur is None:
        return base
    codes = [c.strip() for c in args.heur.split(",") if c.strip()]
    for c in codes:
        if c not in HEURISTIC_CODES:
            raise UsageError(f"unknown heuristic code {c!r}")
    chosen = set(codes)
    return SolverConfig(
        preprocess=base.preprocess,
        trivial_detection=base.trivial_detection,
        b_cpl="b-cpl" in chosen,
        b_sp="b-sp" in chosen,
        b_fi="b-fi" in chosen,
        d_ms="d-ms" in chosen,
        dms_bare_lists_only=base.dms_bare_lists_only,
        c_dist="c-dist" in chosen,
        c_pl="c-pl" in chosen,
        timeout_ms=base.timeout_ms,
        rng_seed=base.rng_seed,
    )


def _load_instance(args) -> PackingInstance:
    g = load_graph(args.graph)
    for name, val in (("--s", args.s), ("--t", args.t)):
        if not (1 <= val <= g.n):
            raise UsageError(f"{name} must be in 1..{g.n}")
    if args.s == args.t:
        raise UsageError("--s and --t must differ")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    if args.ell < 1:
        raise UsageError("--ell must be at least 1")
    return PackingInstance(g, args.s - 1, args.t - 1, args.k, args.ell)


def _config_json(cfg: SolverConfig) -> dict:
    return {
        "heuristics": cfg.heuristic_codes(),
        "preprocess": cfg.preprocess,
        "trivial_detection": cfg.trivial_detection,
        "dms_bare_lists_only": cfg.dms_bare_lists_only,
        "timeout_ms": cfg.timeout_ms,
        "backend": BACKEND,
    }


def _cmd_solve(args, out) -> int:
    inst = _load_instance(args)
    cfg = _config_from_args(args)
    decision, witness, stats = solve(inst, cfg)
    paths_1based = ([[v + 1 for v in p] for p in witness.paths]
                    if witness is not None else None)
    if args.json:
        payload = {
            "decision": decision,
            "witness": paths_1based,
            "stats": stats.as_dict(),
            "config": _config_json(cfg),
        }
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(f"decision: {decision}", file=out)
        if paths_1based is not None:
            for i, p in enumerate(paths_1based, start=1):
                print(f"path {i}: " + " ".join(map(str, p)), file=out)
        print(f"solved by: {stats.solved_by}", file=out)
        print(f"nodes: {stats.nodes}  max depth: {stats.max_depth}", file=out)
        print(f"reduction: {stats.n_before}/{stats.m_before} -> "
              f"{stats.n_after}/{stats.m_after} (vertices/edges)", file=out)
        print(f"wall: {stats.wall_ms:.1f} ms", file=out)
    if decision == "yes":
        return EXIT_YES
    if decision == "no":
        return EXIT_NO
    return EXIT_TIMEOUT


def _cmd_oracle(args, out) -> int:
    inst = _load_instance(args)
    answer = oracle_decide(inst, want_max_packing=args.max_packing)
    paths_1based = ([[v + 1 for v in p] for p in answer.witness.paths]
                    if answer.witness is not None else None)
    if args.json:
        payload = {
            "decision": answer.decision,
            "witness": paths_1based,
            "max_packing": answer.max_packing,
        }
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(f"decision: {answer.decision}", file=out)
        if paths_1based is not None:
            for i, p in enumerate(paths_1based, start=1):
                print(f"path {i}: " + " ".join(map(str, p)), file=out)
        if answer.max_packing is not None:
            print(f"max packing: {answer.max_packing}", file=out)
    return EXIT_YES if answer.decision == "yes" else EXIT_NO


def _cmd_gen(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if not (0.0 <= args.p <= 1.0):
        raise UsageError("--p must be in [0, 1]")
    g = random_gnp(args.n, args.p, args.seed)
    text = format_graph(g)
    if args.output is None:
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_YES


def _sample_pairs(g: Graph, count: int, rng: random.Random,
                  max_dist: int = 10) -> list[tuple[int, int]]:
    """Distinct unordered terminal pairs at distance <= max_dist."""
    ws = Workspace(g)
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    attempts = 0
    limit = max(1000, 200 * count)
    while len(pairs) < count and attempts < limit:
        attempts += 1
        u = rng.randrange(g.n)
        v = rng.randrange(g.n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        d = ws.distances_unmasked(u)[v]
        if 0 < d <= max_dist:
            seen.add(key)
            pairs.append((u, v))
    return pairs


def _error_row(path: str) -> dict:
    row = {c: 0 for c in CSV_COLUMNS}
    row.update(graph=path, config="", decision="error",
               solved_by="unreadable", wall_ms=0.0)
    return row


def _cmd_bench(args, out) -> int:
    if args.k_min < 1 or args.k_max < args.k_min:
        raise UsageError("need 1 <= k-min <= k-max")
    if args.ell_min < 1 or args.ell_max < args.ell_min:
        raise UsageError("need 1 <= ell-min <= ell-max")
    config_names = [c.strip() for c in args.configs.split(",") if c.strip()]
    base = SolverConfig(
        preprocess=not args.no_preprocess,
        trivial_detection=not args.no_trivial,
        dms_bare_lists_only=args.dms_bare_lists_only,
        timeout_ms=args.timeout_ms,
        rng_seed=args.seed,
    )
    try:
        configs = {name: config_from_name(name, base) for name in config_names}
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    rng = random.Random(args.seed)
    tasks = []  # (graph_path, g, s, t, k, ell, config_name)
    for path in args.graphs:
        try:
            g = load_graph(path)
        except (OSError, GraphFormatError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            tasks.append((path, None, 0, 0, 0, 0, ""))
            continue
        pairs = _sample_pairs(g, args.pairs, rng)
        if len(pairs) < args.pairs:
            print(f"warning: {path}: only {len(pairs)} usable terminal "
                  f"pairs of {args.pairs} requested", file=sys.stderr)
        for (s, t) in pairs:
            for k in range(args.k_min, args.k_max + 1):
                for ell in range(args.ell_min, args.ell_max + 1):
                    order = list(config_names)
                    rng.shuffle(order)
                    for name in order:
                        tasks.append((path, g, s, t, k, ell, name))

    def run_task(task):
        path, g, s, t, k, ell, name = task
        if g is None:
            return _error_row(path)
        inst = PackingInstance(g, s, t, k, ell)
        decision, _, stats = solve(inst, configs[name])
        row = {"graph": path, "s": s + 1, "t": t + 1, "k": k, "ell": ell,
               "config": name, "decision": decision}
        row.update(stats.as_dict())
        return {c: row[c] for c in CSV_COLUMNS}

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run_task, tasks))
    else:
        rows = [run_task(t) for t in tasks]

    if args.output is None:
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        with open(args.output, "a", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS,
                                    lineterminator="\n")
            if fh.tell() == 0:
                writer.writeheader()
            writer.writerows(rows)
    return EXIT_YES


def _build_parser() -> _Parser:
    parser = _Parser(prog="pathpack",
                     description="Exact solver for packing k internally "
                                 "vertex-disjoint s-t paths of length at "
                                 "most ell.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide one instance")
    _add_instance_args(p_solve)
    _add_solver_args(p_solve)
    p_solve.add_argument("--json", action="store_true")
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle",
                              help="brute-force reference decision")
    _add_instance_args(p_oracle)
    p_oracle.add_argument("--max-packing", action="store_true",
                          help="also report the maximum packing size")
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate a seeded G(n, p) graph")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="batch runs over sampled "
                                           "terminal pairs, CSV output")
    p_bench.add_argument("graphs", nargs="+", help="graph files")
    p_bench.add_argument("--pairs", type=int, default=10,
                         help="terminal pairs per graph (distance <= 10)")
    p_bench.add_argument("--k-min", type=int, default=2)
    p_bench.add_argument("--k-max", type=int, default=7)
    p_bench.add_argument("--ell-min", type=int, default=5)
    p_bench.add_argument("--ell-max", type=int, default=10)
    p_bench.add_argument("--configs", default="all",
                         help="comma list of configuration names: "
                              + ",".join(CONFIG_NAMES))
    p_bench.add_argument("--timeout-ms", type=int, default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--no-preprocess", action="store_true")
    p_bench.add_argument("--no-trivial", action="store_true")
    p_bench.add_argument("--dms-bare-lists-only", type=_bool_flag,
                         default=True, metavar="BOOL")
    p_bench.add_argument("-o", "--output", default=None,
                         help="CSV file to append to (default: stdout)")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None,
         out: Optional[io.TextIOBase] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"bad graph file: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE


def entry() -> None:  # console-script shim
    sys.exit(main())
