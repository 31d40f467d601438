"""``pfd`` command line: decide, minimize, reduce, oracle, gen.

Every command except ``gen`` writes one JSON report (schema below) to
stdout and a short human summary to stderr. ``gen`` writes an instance
file. Exit codes: 0 yes/success, 1 no, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from .errors import PFDError
from .fileformat import parse_instance, render_instance
from .generator import GenSpec, planted_instance, random_multigraph
from .oracle import oracle_min_deletion
from .reducer import Instance, reduce
from .solver import SolverStats, solve_decision, solve_minimize, theorem_bound

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2

_COUNT = {"type": "integer", "minimum": 0}
_IDS = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_RULE_COUNTS = {
    "type": "object",
    "properties": {f"RULE{i}": _COUNT for i in range(1, 6)},
    "required": [f"RULE{i}" for i in range(1, 6)],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pfd run report",
    "type": "object",
    "properties": {
        "command": {"enum": ["decide", "minimize", "reduce", "oracle"]},
        "answer": {"enum": ["yes", "no", "unknown"]},
        "n": _COUNT,
        "m": _COUNT,
        "r": {"type": "integer", "minimum": 1},
        "k": {"type": ["integer", "null"]},
        "solution": {"oneOf": [_IDS, {"type": "null"}]},
        "opt": {"type": ["integer", "null"], "minimum": 0},
        "stats": {
            "type": "object",
            "properties": {
                "branch_nodes": _COUNT,
                "fallback_calls": _COUNT,
                "fallback_nodes": _COUNT,
                "peak_depth": _COUNT,
                "rule_firings": {
                    "type": "object",
                    "properties": {str(i): _COUNT for i in range(1, 6)},
                    "additionalProperties": False,
                },
            },
            "required": ["branch_nodes", "fallback_calls", "fallback_nodes",
                         "peak_depth", "rule_firings"],
            "additionalProperties": False,
        },
        "theorem_bound": {"type": "integer", "minimum": 1},
        "bound_ok": {"type": "boolean"},
        "trace_summary": _RULE_COUNTS,
        "trace": {"type": "array", "items": {"type": "string", "pattern": "^RULE[1-5]( -?[0-9]+)*$"}},
        "reduced": {
            "type": ["object", "null"],
            "properties": {
                "n": _COUNT,
                "m": _COUNT,
                "k": {"type": "integer"},
                "vertex_map": _IDS,
                "instance": {"type": "string"},
            },
            "required": ["n", "m", "k", "vertex_map", "instance"],
            "additionalProperties": False,
        },
        "oracle": {
            "type": "object",
            "properties": {
                "answer": {"enum": ["yes", "no"]},
                "opt": {"type": ["integer", "null"]},
                "solution": {"oneOf": [_IDS, {"type": "null"}]},
                "cap": _COUNT,
                "agrees": {"type": "boolean"},
            },
            "required": ["answer", "opt", "solution", "cap"],
            "additionalProperties": False,
        },
        "wall_time_ms": {"type": "number", "minimum": 0},
    },
    "required": ["command", "answer", "n", "m", "r", "k", "solution", "opt",
                 "trace_summary", "wall_time_ms"],
    "additionalProperties": False,
}


def _ids(vs) -> Optional[List[int]]:
    return None if vs is None else [v + 1 for v in sorted(vs)]


def _trace_summary(inst: Instance) -> dict:
    red = reduce(inst)
    return {f"RULE{i}": c for i, c in red.trace.counts().items()}


def _base_report(args, inst: Instance) -> dict:
    return {
        "command": args.command,
        "n": inst.graph.n(),
        "m": inst.graph.m(),
        "r": inst.r,
        "k": inst.k,
        "solution": None,
        "opt": None,
    }


def _add_stats(report: dict, stats: SolverStats, k: int, show_bound: bool,
               ok: Optional[bool] = None) -> None:
    report["stats"] = stats.to_dict()
    if show_bound:
        bound = theorem_bound(k)
        report["theorem_bound"] = bound
        report["bound_ok"] = stats.branch_nodes <= bound if ok is None else ok


def _oracle_block(inst: Instance, cap: int, answer: Optional[bool] = None) -> dict:
    res = oracle_min_deletion(inst.graph, inst.r, cap)
    block = {
        "answer": "yes" if res else "no",
        "opt": res[0] if res else None,
        "solution": _ids(res[1]) if res else None,
        "cap": cap,
    }
    if answer is not None:
        block["agrees"] = answer == (res is not None)
    return block


def _read(path: str) -> Instance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path) as fh:
        return parse_instance(fh.read())


def cmd_decide(args, inst: Instance) -> dict:
    if args.k is not None:
        inst.k = args.k
    d = solve_decision(inst, threads=args.threads)
    report = _base_report(args, inst)
    report["answer"] = "yes" if d.answer else "no"
    report["solution"] = _ids(d.solution.vertices) if d.answer else None
    _add_stats(report, d.stats, inst.k, args.stats)
    if args.oracle:
        report["oracle"] = _oracle_block(inst, inst.k, d.answer)
    return report


def cmd_minimize(args, inst: Instance) -> dict:
    res = solve_minimize(inst.graph, inst.r, args.kmax, threads=args.threads)
    report = _base_report(args, inst)
    report["k"] = None
    report["answer"] = "yes" if res.opt is not None else "no"
    report["opt"] = res.opt
    report["solution"] = _ids(res.solution.vertices) if res.solution else None
    # stats are summed over the k scan; the bound is checked per run
    _add_stats(report, res.stats, args.kmax, args.stats, res.bound_holds())
    if args.oracle:
        report["oracle"] = _oracle_block(inst, args.kmax, res.opt is not None)
    return report


def cmd_reduce(args, inst: Instance) -> dict:
    red = reduce(inst)
    report = _base_report(args, inst)
    g2 = red.instance.graph
    if red.is_no:
        report["answer"] = "no"
        report["reduced"] = None
    else:
        report["answer"] = "yes" if g2.n() == 0 else "unknown"
        report["reduced"] = {
            "n": g2.n(),
            "m": g2.m(),
            "k": red.instance.k,
            "vertex_map": _ids(g2.vertices()),
            "instance": render_instance(red.instance, ["reduced instance"]),
        }
    report["trace"] = red.trace.to_text(base=1).splitlines()
    return report


def cmd_oracle(args, inst: Instance) -> dict:
    cap = inst.k if args.oracle_cap is None else args.oracle_cap
    block = _oracle_block(inst, cap)
    report = _base_report(args, inst)
    report["answer"] = block["answer"]
    report["opt"] = block["opt"]
    report["solution"] = block["solution"]
    report["oracle"] = block
    return report


def cmd_gen(args) -> int:
    spec = GenSpec(
        seed=args.seed,
        n=args.n,
        edge_budget=args.edges,
        loop_rate=args.loop_rate,
        multi_rate=args.multi_rate,
        r=args.r,
        planted_k=args.planted,
    )
    comments = [f"seed={spec.seed} n={spec.n} edges={spec.edge_budget} "
                f"loop_rate={spec.loop_rate} multi_rate={spec.multi_rate}"]
    if args.planted:
        g, planted = planted_instance(spec)
        comments.append("planted " + " ".join(str(v + 1) for v in planted))
    else:
        g = random_multigraph(spec)
    k = args.k if args.k is not None else args.planted
    sys.stdout.write(render_instance(Instance(g, spec.r, k), comments))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfd", description="Exact solver for r-pseudoforest deletion."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", help="instance file, or - for stdin")
        return p

    def with_solver(p):
        p.add_argument("--stats", action="store_true",
                       help="report the (10k+1)^k node bound and whether it held")
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for the root's branches")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check with brute force (small instances only)")
        return p

    p = with_solver(with_input(sub.add_parser("decide", help="answer yes/no for the header's k")))
    p.add_argument("--k", type=int, help="override the budget from the header")
    p = with_solver(with_input(sub.add_parser("minimize", help="smallest k up to --kmax")))
    p.add_argument("--kmax", type=int, required=True)
    with_input(sub.add_parser("reduce", help="apply the reduction rules and print the trace"))
    p = with_input(sub.add_parser("oracle", help="brute-force optimum"))
    p.add_argument("--oracle-cap", type=int, help="largest subset size tried (default: k)")

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", type=int, default=0)
    p.add_argument("--loop-rate", type=float, default=0.0)
    p.add_argument("--multi-rate", type=float, default=0.0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--planted", type=int, default=0,
                   help="plant this many extra vertices on an r-pseudoforest")
    p.add_argument("--k", type=int, help="budget written to the header (default: --planted)")
    return parser


COMMANDS = {
    "decide": cmd_decide,
    "minimize": cmd_minimize,
    "reduce": cmd_reduce,
    "oracle": cmd_oracle,
}


def _summary(report: dict) -> str:
    parts = [f"{report['command']}: {report['answer']}"]
    if report.get("opt") is not None:
        parts.append(f"opt={report['opt']}")
    if report.get("solution") is not None:
        parts.append(f"X={report['solution']}")
    stats = report.get("stats")
    if stats:
        parts.append(f"branch_nodes={stats['branch_nodes']}")
    if "theorem_bound" in report:
        parts.append(f"bound={report['theorem_bound']} ok={report['bound_ok']}")
    parts.append(f"{report['wall_time_ms']:.1f} ms")
    return "  ".join(parts)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "gen":
            return cmd_gen(args)
        start = time.perf_counter()
        inst = _read(args.file)
        report = COMMANDS[args.command](args, inst)
    except (PFDError, OSError) as exc:
        print(f"pfd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["trace_summary"] = _trace_summary(inst)
    report["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3)
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    print(_summary(report), file=sys.stderr)
    return EXIT_NO if report["answer"] == "no" else EXIT_YES


if __name__ == "__main__":
    sys.exit(main())
