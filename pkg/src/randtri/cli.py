"""Command-line front end for the three computation routes.

Subcommands: ``quad`` (region catalog by nested quadrature, checked
against the exact references), ``mc`` (seeded Monte Carlo), ``lattice``
(exact midpoint-lattice enumeration), and ``report`` (the full acceptance
suite).  Machine consumers get one newline-delimited JSON record per run
on a pipe; humans get an aligned table on a TTY.

Exit codes: 0 success, 1 accuracy or acceptance failure, 2 usage error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

from . import __version__
from .geometry import CubeDomain, RectDomain
from .lattice import WorkLimitExceededError, enumerate_mean_area
from .montecarlo import CubeTetrahedron, FrameTriangle, InteriorTriangle, estimate
from .quadrature import QuadConfig, nested_quadrature
from .regions import (
    UnknownNameError,
    exact_reference,
    normalizer_regions,
    rectangle_regions,
    square_normalizer_regions,
    square_regions,
)
from .report import run_report

__all__ = ["RunRecord", "main"]

EXIT_OK = 0
EXIT_ACCURACY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_RECT_NAMES = tuple(f"I{k}" for k in range(1, 6)) + tuple(f"J{k}" for k in range(1, 6))


@dataclasses.dataclass(frozen=True)
class RunRecord:
    """Everything needed to reproduce and audit one invocation."""

    command: str
    parameters: dict
    results: list
    wall_time_s: float
    version: str
    seed: int | None = None


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


def _emit(record: RunRecord) -> None:
    if sys.stdout.isatty():
        rows = record.results
        if rows:
            cols = list(rows[0].keys())
            cells = [[_fmt(row.get(col, "")) for col in cols] for row in rows]
            widths = [
                max(len(col), max(len(row[i]) for row in cells))
                for i, col in enumerate(cols)
            ]
            print("  ".join(col.ljust(w) for col, w in zip(cols, widths)))
            for row in cells:
                print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
        tail = f"# {record.command} v{record.version} wall={record.wall_time_s:.3f}s"
        if record.seed is not None:
            tail += f" seed={record.seed}"
        print(tail)
    else:
        print(json.dumps(dataclasses.asdict(record)))


def _quad_row(name: str, value: float, est_error: float, evaluations: int,
              converged: bool, a: float, b: float) -> dict:
    reference = exact_reference(name, a, b)
    return {
        "region": name,
        "value": value,
        "est_error": est_error,
        "evaluations": evaluations,
        "converged": converged,
        "reference": f"{reference.numerator}/{reference.denominator}",
        "reference_value": float(reference),
        "rel_deviation": abs(value - float(reference)) / abs(float(reference)),
    }


def _resolve_regions(name: str, a: float, b: float):
    catalog = {r.name: r for r in rectangle_regions(a, b) + normalizer_regions(a, b)}
    if name in catalog:
        return [catalog[name]]
    if a == b:
        square = {
            r.name: r
            for r in square_regions(a) + square_normalizer_regions(a)
        }
        if name in square:
            return [square[name]]
    elif name in {f"I{k}" for k in range(6, 11)} | {f"J{k}" for k in range(6, 11)}:
        raise UnknownNameError(
            f"region {name!r} belongs to the square decomposition; it needs a == b"
        )
    raise UnknownNameError(f"unknown region {name!r}")


def _cmd_quad(args: argparse.Namespace) -> int:
    RectDomain(args.a, args.b)  # reject bad domains before any work
    cfg = QuadConfig(rel_tol=args.rel_tol, max_depth=args.max_depth)
    t0 = time.perf_counter()
    rows = []
    if args.region == "all":
        results = {}
        for region in rectangle_regions(args.a, args.b) + normalizer_regions(args.a, args.b):
            res = nested_quadrature(region, cfg)
            results[res.name] = res
            rows.append(
                _quad_row(res.name, res.value, res.est_error, res.evaluations,
                          res.converged, args.a, args.b)
            )
        i_sum = sum(results[f"I{k}"].value for k in range(1, 6))
        j_sum = sum(results[f"J{k}"].value for k in range(1, 6))
        i_err = sum(results[f"I{k}"].est_error for k in range(1, 6))
        j_err = sum(results[f"J{k}"].est_error for k in range(1, 6))
        evals = sum(r.evaluations for r in results.values())
        conv = all(r.converged for r in results.values())
        rows.append(_quad_row("I15", i_sum, i_err, evals, conv, args.a, args.b))
        rows.append(_quad_row("J15", j_sum, j_err, evals, conv, args.a, args.b))
        # first-order error propagation for the quotient
        ratio_err = (i_err + (i_sum / j_sum) * j_err) / j_sum
        rows.append(
            _quad_row("RESULT", i_sum / j_sum, ratio_err, evals, conv, args.a, args.b)
        )
    else:
        for region in _resolve_regions(args.region, args.a, args.b):
            res = nested_quadrature(region, cfg)
            rows.append(
                _quad_row(res.name, res.value, res.est_error, res.evaluations,
                          res.converged, args.a, args.b)
            )
    record = RunRecord(
        command="quad",
        parameters={
            "a": args.a,
            "b": args.b,
            "region": args.region,
            "rel_tol": args.rel_tol,
            "max_depth": args.max_depth,
        },
        results=rows,
        wall_time_s=time.perf_counter() - t0,
        version=__version__,
    )
    _emit(record)
    worst = max(row["rel_deviation"] for row in rows)
    return EXIT_OK if worst <= 10.0 * args.rel_tol else EXIT_ACCURACY


def _cmd_mc(args: argparse.Namespace) -> int:
    if args.problem == "interior":
        problem = InteriorTriangle(RectDomain(args.a, args.b))
    elif args.problem == "frame":
        problem = FrameTriangle()
    else:
        problem = CubeTetrahedron(CubeDomain(args.a))
    t0 = time.perf_counter()
    result = estimate(
        problem, args.n, seed=args.seed, chunks=args.chunks, threads=args.threads
    )
    record = RunRecord(
        command="mc",
        parameters={
            "problem": args.problem,
            "n": args.n,
            "seed": args.seed,
            "chunks": args.chunks,
            "threads": args.threads,
            "a": args.a,
            "b": args.b,
        },
        results=[dataclasses.asdict(result)],
        wall_time_s=time.perf_counter() - t0,
        version=__version__,
        seed=args.seed,
    )
    _emit(record)
    return EXIT_OK


def _cmd_lattice(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    value = enumerate_mean_area(args.n, symmetry=args.symmetry)
    record = RunRecord(
        command="lattice",
        parameters={"n": args.n, "symmetry": args.symmetry},
        results=[
            {
                "n": args.n,
                "points": 4 * args.n,
                "triples": (4 * args.n) ** 3,
                "mean": f"{value.numerator}/{value.denominator}",
                "decimal": float(value),
            }
        ],
        wall_time_s=time.perf_counter() - t0,
        version=__version__,
    )
    _emit(record)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    rows, all_pass = run_report()
    record = RunRecord(
        command="report",
        parameters={"out": args.out},
        results=rows,
        wall_time_s=time.perf_counter() - t0,
        version=__version__,
    )
    _emit(record)
    if args.out:
        payload = {
            "version": __version__,
            "all_pass": all_pass,
            "wall_time_s": record.wall_time_s,
            "criteria": rows,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all_pass else EXIT_ACCURACY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randtri",
        description="Mean random-triangle areas by quadrature, Monte Carlo, "
        "and exact enumeration.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    quad = sub.add_parser("quad", help="integrate catalog regions and compare to exact values")
    quad.add_argument("--a", type=float, default=1.0, help="rectangle width")
    quad.add_argument("--b", type=float, default=1.0, help="rectangle height")
    quad.add_argument(
        "--region",
        default="all",
        help="I1..I5, J1..J5 (I6..I10, J6..J10 when a == b), or 'all'",
    )
    quad.add_argument("--rel-tol", type=float, default=1e-4)
    quad.add_argument("--max-depth", type=int, default=12)
    quad.set_defaults(func=_cmd_quad)

    mc = sub.add_parser("mc", help="seeded Monte Carlo estimation")
    mc.add_argument("--problem", choices=("interior", "frame", "tetra"), required=True)
    mc.add_argument("--n", type=int, default=1_000_000)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--chunks", type=int, default=64)
    mc.add_argument("--threads", type=int, default=None)
    mc.add_argument("--a", type=float, default=1.0, help="rectangle width or cube side")
    mc.add_argument("--b", type=float, default=1.0, help="rectangle height")
    mc.set_defaults(func=_cmd_mc)

    lattice = sub.add_parser("lattice", help="exact midpoint-lattice enumeration")
    lattice.add_argument("--n", type=int, required=True, help="subdivisions per side")
    lattice.add_argument(
        "--symmetry",
        action="store_true",
        help="fix the first vertex to the bottom side and weight by 4",
    )
    lattice.set_defaults(func=_cmd_lattice)

    report = sub.add_parser("report", help="run the full acceptance suite")
    report.add_argument("--out", default=None, help="also write the report JSON here")
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkLimitExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
