"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 infeasible instance; ``verify-bounds``
exits 3 when some row violates its bound.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import instance_io
from .approx import (
    certified_bound,
    geometric_median_positions,
    solve_via_dmax,
    solve_via_representative,
)
from .campaign import format_rows, run_campaign
from .cost import FAMILY_BOUNDS, ratio_report, worst_case_cost
from .dp import solve_exact_with_stats
from .fptas import solve_fptas
from .generators import (
    FAMILIES,
    METRIC_KINDS,
    gen_gm_counterexample,
    gen_random,
    gen_tight_clique,
    gen_tight_cycle,
    gen_tight_path,
    gen_tight_star,
    gen_tight_triangle,
)
from .model import CapacityError, InfeasibleError, InputError, check_ptolemy

EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_BOUND_VIOLATED = 3


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _edges(edges) -> str:
    return " ".join(f"{i}-{j}" for i, j in edges)


def _exact_c(instance, edges) -> str:
    try:
        return _fmt(worst_case_cost(instance, edges)[0])
    except CapacityError:
        return "skipped"


def cmd_solve(args: argparse.Namespace) -> int:
    inst = instance_io.load(args.input)
    kind = inst.problem.kind
    lines = [f"method={args.method}"]
    if args.method in ("dp", "fptas"):
        if kind != "sp":
            raise InputError(f"method {args.method} solves sp instances only, got {kind}")
        if args.method == "dp":
            path, opt, stats = solve_exact_with_stats(inst)
            bound = 1.0
            extra = [f"dp_optimum={_fmt(opt)}"]
        else:
            if args.eps is None or not args.eps > 0:
                raise InputError("fptas needs --eps > 0")
            res = solve_fptas(inst, eps=args.eps)
            path, stats, bound = res.path, res.stats, 1.0 + args.eps
            extra = [f"fptas_cost={_fmt(res.cost)}", f"A={_fmt(res.A)}", f"quantum={_fmt(res.quantum)}"]
        edges = tuple(tuple(sorted(e)) for e in zip(path, path[1:]))
        lines += [f"path={' '.join(map(str, path))}", f"edges={_edges(edges)}"]
        lines += [f"c_max={_fmt(sum(inst.dmax_table[i, j] for i, j in edges))}"]
        lines += [f"c={_exact_c(inst, edges)}"] + extra
        if stats is not None:
            lines += [f"n_profiles={stats.n_profiles}", f"n_values={stats.n_values}"]
        lines.append(f"bound={_fmt(bound)}")
    elif args.method in ("dmax", "gm"):
        if kind not in ("sp", "mst", "tsp"):
            raise InputError(f"method {args.method} needs an sp, mst or tsp instance, got {kind}")
        if args.method == "dmax":
            sol = solve_via_dmax(inst)
            bound = certified_bound(kind, args.family)
        else:
            u = geometric_median_positions(inst)
            sol = solve_via_representative(inst, u)
            bound = math.inf
        if sol.path is not None:
            lines.append(f"path={' '.join(map(str, sol.path))}")
        lines += [f"edges={_edges(sol.edges)}", f"c_max={_fmt(sol.c_max)}"]
        lines += [f"c={_exact_c(inst, sol.edges)}", f"bound={_fmt(bound) if math.isfinite(bound) else 'unbounded'}"]
    else:
        raise InputError(f"unknown method {args.method!r}")
    print("\n".join(lines))
    return 0


def cmd_verify_bounds(args: argparse.Namespace) -> int:
    rows = run_campaign(
        families=_split(args.families),
        metric_kinds=_split(args.metrics),
        seeds=args.seeds,
        n_max=args.n,
        sigma_max=args.sigma,
        jobs=args.jobs,
    )
    text = format_rows(rows)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    failed = [r for r in rows if not r.skipped and not r.ok]
    skipped = sum(r.skipped for r in rows)
    print(f"# rows={len(rows)} failed={len(failed)} skipped={skipped}", file=sys.stderr)
    return EXIT_BOUND_VIOLATED if failed else 0


def cmd_check_ptolemy(args: argparse.Namespace) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    metric = instance_io.metric_from_dict(data["metric"] if "metric" in data else data)
    bad = check_ptolemy(metric)
    if not bad:
        print("Ptolemaic")
        return 0
    noun = "quadruple" if len(bad) == 1 else "quadruples"
    print(f"non-Ptolemaic, {len(bad)} violating {noun}")
    for v in bad:
        (a, b), (c, d) = v.diagonals
        print(f"points={list(v.points)} d({a},{b})*d({c},{d})={_fmt(v.lhs)} > {_fmt(v.rhs)}")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.tight:
        builders = {
            "path": lambda: gen_tight_path(args.n),
            "cycle": lambda: gen_tight_cycle(args.n),
            "triangle": gen_tight_triangle,
            "clique": lambda: gen_tight_clique(args.n),
            "star": lambda: gen_tight_star(args.n),
            "gm": lambda: gen_gm_counterexample(args.eps).instance,
        }
        inst = builders[args.tight]()
    else:
        inst = gen_random(args.random, args.n, args.sigma, args.metric, args.seed)
    text = instance_io.dumps(inst)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    inst = instance_io.load(args.input)
    edges = inst.problem.edge_set if inst.problem.kind == "evaluate" else inst.graph.edges
    report = ratio_report(inst, edges, args.family)
    print("family,c_max,c,ratio,bound,tight")
    print(report.csv_row())
    return 0


def _split(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which would read as "infeasible"
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="robust-locus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--method", required=True, choices=["dmax", "gm", "dp", "fptas"])
    s.add_argument("--eps", type=float)
    s.add_argument("--family", choices=sorted(FAMILY_BOUNDS), help="structure tag for the certified bound")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify-bounds", help="random campaign checking c_max/c bounds")
    v.add_argument("--families", default=",".join(FAMILIES))
    v.add_argument("--metrics", default=",".join(METRIC_KINDS))
    v.add_argument("--seeds", type=int, default=100)
    v.add_argument("--n", type=int, default=10)
    v.add_argument("--sigma", type=int, default=3)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_bounds)

    c = sub.add_parser("check-ptolemy", help="test Ptolemy's inequality on a metric or instance file")
    c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_check_ptolemy)

    g = sub.add_parser("gen", help="write an instance as JSON")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--tight", choices=["path", "cycle", "triangle", "clique", "star", "gm"])
    which.add_argument("--random", choices=list(FAMILIES))
    g.add_argument("--n", type=int, default=4)
    g.add_argument("--sigma", type=int, default=2)
    g.add_argument("--metric", choices=list(METRIC_KINDS), default="euclidean2d")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--eps", type=float, default=0.01)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("evaluate", help="ratio report c_max vs exact worst-case cost")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--family", default="general", choices=sorted(FAMILY_BOUNDS))
    e.set_defaults(func=cmd_evaluate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InputError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
