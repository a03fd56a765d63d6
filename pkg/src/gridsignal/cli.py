"""Command-line surface: solvers, verification, sweeps, and the report path.

Exit codes: 0 success (and verified), 1 infeasible or I/O failure, 2 usage,
3 verification ran but residuals exceeded the tolerance.  All output is
deterministic; floats are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from pathlib import Path

from .equilibrium import (
    InfeasiblePartitionError,
    Partition,
    equilibrium_profile,
    max_messages,
    verify_equilibrium,
)
from .experiments import ScenarioPayoffs, scenario_payoffs, sweep
from .model import ModelParams
from .quantizer import br_dynamics

__all__ = ["main"]

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

SWEEP_HEADER = (
    "b,m_star,agg_no_message,agg_equilibrium,agg_full_info,"
    "cons_self_serve,cons_full_info,cons_equilibrium"
)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _json_dumps(obj) -> str:
    """Canonical JSON: insertion-ordered keys, floats at 12 significant digits."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        items = ", ".join(f'"{k}": {_json_dumps(v)}' for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _sweep_csv(records: list[ScenarioPayoffs]) -> str:
    lines = [SWEEP_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    _fmt(r.b),
                    str(r.m_star),
                    _fmt(r.agg_no_message),
                    _fmt(r.agg_equilibrium),
                    _fmt(r.agg_full_info),
                    _fmt(r.cons_self_serve),
                    _fmt(r.cons_full_info),
                    _fmt(r.cons_equilibrium),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsignal",
        description="Partition equilibria of the consumer-aggregator signaling game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("max-messages", help="maximum message count M* at a bias")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--cap", type=int, default=64)

    p = sub.add_parser("partition", help="solve the equilibrium partition")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("payoffs", help="six scenario expected payoffs at a bias")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--cells", type=int, default=None)
    p.add_argument("--K", type=float, default=1.0)

    p = sub.add_parser("sweep", help="scenario payoffs over a bias grid")
    p.add_argument("--b-min", type=float, required=True)
    p.add_argument("--b-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="epsilon-best-response check of a solved profile")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("lloyd", help="best-response dynamics (Lloyd-Max at b = 0)")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser(
        "report", help="sweep to CSV plus rendered figures in an output directory"
    )
    p.add_argument("--b-min", type=float, default=0.0)
    p.add_argument("--b-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--outdir", type=str, default="report")

    return parser


def _require(parser: argparse.ArgumentParser, ok: bool, message: str) -> None:
    if not ok:
        parser.error(message)


def _cmd_max_messages(args) -> int:
    m = max_messages(ModelParams(b=args.b), epsilon=args.epsilon, cap=args.cap)
    print(m)
    return EXIT_OK


def _cmd_partition(args) -> int:
    profile = equilibrium_profile(ModelParams(b=args.b), args.cells, args.epsilon)
    bounds = list(profile.partition.boundaries)
    actions = list(profile.actions)
    if args.format == "json":
        print(_json_dumps({"b": args.b, "boundaries": bounds, "actions": actions}))
    else:
        print("boundaries," + ",".join(_fmt(x) for x in bounds))
        print("actions," + ",".join(_fmt(x) for x in actions))
    return EXIT_OK


def _cmd_payoffs(args) -> int:
    record = scenario_payoffs(ModelParams(b=args.b, K=args.K), cells=args.cells)
    print(_json_dumps(asdict(record)))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    records = sweep(ModelParams(b=args.b_min), args.b_min, args.b_max, args.steps)
    if args.format == "csv":
        text = _sweep_csv(records)
    else:
        text = _json_dumps([asdict(r) for r in records]) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_verify(args) -> int:
    p = ModelParams(b=args.b)
    profile = equilibrium_profile(p, args.cells)
    report = verify_equilibrium(p, profile, grid_n=args.grid, tol=args.tol)
    print(_json_dumps(asdict(report)))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_lloyd(args) -> int:
    result = br_dynamics(
        ModelParams(b=args.b),
        args.cells,
        init=Partition.uniform(args.cells),
        max_iter=args.max_iter,
        tol=args.tol,
    )
    payload = {
        "profile": {
            "boundaries": list(result.profile.partition.boundaries),
            "actions": list(result.profile.actions),
        },
        "iterations": result.iterations,
        "converged": result.converged,
        "merged_cells": result.merged_cells,
    }
    print(_json_dumps(payload))
    return EXIT_OK


def _cmd_report(args) -> int:
    from . import plots  # deferred: pulls in matplotlib

    records = sweep(ModelParams(b=args.b_min), args.b_min, args.b_max, args.steps)
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        csv_path = outdir / "sweep.csv"
        csv_path.write_text(_sweep_csv(records))
        fig_m = plots.plot_max_messages(records, outdir / "max_messages.png")
        fig_p = plots.plot_scenario_payoffs(records, outdir / "scenario_payoffs.png")
    except OSError as exc:
        print(f"cannot write report to {outdir}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    for written in (csv_path, fig_m, fig_p):
        print(written)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if hasattr(args, "b"):
        _require(parser, args.b >= 0.0, "--b must be >= 0")
    if hasattr(args, "epsilon"):
        _require(parser, args.epsilon > 0.0, "--epsilon must be > 0")
    if hasattr(args, "cap"):
        _require(parser, args.cap >= 1, "--cap must be >= 1")
    if getattr(args, "cells", None) is not None:
        _require(parser, args.cells >= 1, "--cells must be >= 1")
    if hasattr(args, "steps"):
        _require(parser, args.steps >= 2, "--steps must be >= 2")
    if hasattr(args, "b_min"):
        _require(
            parser,
            0.0 <= args.b_min < args.b_max,
            "need 0 <= --b-min < --b-max",
        )
    if hasattr(args, "grid"):
        _require(parser, args.grid >= 100, "--grid must be >= 100")
    if hasattr(args, "tol"):
        _require(parser, args.tol > 0.0, "--tol must be > 0")
    if hasattr(args, "max_iter"):
        _require(parser, args.max_iter >= 1, "--max-iter must be >= 1")

    handlers = {
        "max-messages": _cmd_max_messages,
        "partition": _cmd_partition,
        "payoffs": _cmd_payoffs,
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
        "lloyd": _cmd_lloyd,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except InfeasiblePartitionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
