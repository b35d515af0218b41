"""Command-line front end.

Subcommands: ``bounds`` (closed-form values at one parameter point),
``sweep`` (CSV over a parameter grid), ``figure`` (reproduce one of the
canned figure CSVs), ``table`` (the nine-cell gap report) and ``verify``
(the full cross-check suite).

Exit codes: 0 on success, 1 when verification fails, 2 on usage or I/O
errors. The ``CTXSD_TOL`` environment variable loosens the comparison
tolerances used by ``verify`` and the advantage flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import config
from .bounds import BoundSpec, NONCONTEXTUAL, QUANTUM, eval_bound
from .errors import CtxsdError
from .harness import (
    FIGURE_IDS,
    FigureJob,
    SweepSpec,
    Target,
    emit_figure,
    run_sweep,
    table_cmd,
    verify_all,
    write_csv,
)

_FIGURE_TOKENS = {"PG": "P_g", "P0": "P_0", "C": "C", "C1": "C", "C2": "C"}
_THEORY_TOKENS = {"Q": QUANTUM, "QUANTUM": QUANTUM, "NC": NONCONTEXTUAL,
                  "NONCONTEXTUAL": NONCONTEXTUAL}


def _parse_target(token: str) -> Target:
    parts = token.upper().split(":")
    if len(parts) != 3:
        raise CtxsdError(
            f"target {token!r} must look like SCHEME:FIGURE:THEORY, "
            "e.g. MESD:Pg:Q or MESD:C1:NC"
        )
    scheme, figure_token, theory_token = parts
    if figure_token not in _FIGURE_TOKENS:
        raise CtxsdError(f"unknown figure token {token!r} (use Pg, P0, C, C1 or C2)")
    if theory_token not in _THEORY_TOKENS:
        raise CtxsdError(f"unknown theory token {token!r} (use Q or NC)")
    return Target(
        scheme=scheme,
        figure=_FIGURE_TOKENS[figure_token],
        theory=_THEORY_TOKENS[theory_token],
        outcome=2 if figure_token == "C2" else 1,
    )


def _add_point_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--c", type=float, default=0.5, help="confusability in [0, 1]")
    sub.add_argument("--p", type=float, default=0.5, help="noise level in [0, 1]")
    sub.add_argument("--omega", type=float, default=0.5, help="strategy mixing weight")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctxsd",
        description="Quantum versus noncontextual bounds for binary state discrimination.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="print every closed-form bound at one point")
    _add_point_args(p_bounds)
    p_bounds.set_defaults(func=_cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter and emit CSV")
    p_sweep.add_argument("--variable", choices=("c", "p", "omega"), required=True)
    p_sweep.add_argument("--start", type=float, default=0.0)
    p_sweep.add_argument("--stop", type=float, default=1.0)
    p_sweep.add_argument("--points", type=int, default=101)
    p_sweep.add_argument(
        "--target",
        action="append",
        required=True,
        metavar="SCHEME:FIGURE:THEORY",
        help="bound column, e.g. MESD:Pg:Q, MCM:P0:NC, MESD:C2:NC (repeatable)",
    )
    _add_point_args(p_sweep)
    p_sweep.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="emit one of the canned figure CSVs")
    p_fig.add_argument("--id", choices=FIGURE_IDS, required=True)
    p_fig.add_argument("--out", type=Path, required=True)
    p_fig.set_defaults(func=_cmd_figure)

    p_table = sub.add_parser("table", help="render the nine-cell gap table")
    _add_point_args(p_table)
    p_table.set_defaults(func=_cmd_table)

    p_verify = sub.add_parser("verify", help="run the full cross-check suite")
    p_verify.add_argument("--points", type=int, default=21, help="grid density per axis")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def _cmd_bounds(args: argparse.Namespace, tols: config.Tolerances) -> int:
    rows: list[tuple[str, str, str, float]] = []
    for scheme in ("MESD", "USD", "MCM"):
        p = args.p if scheme == "MCM" else None
        for figure in ("P_g", "P_0", "C"):
            for theory in (QUANTUM, NONCONTEXTUAL):
                if scheme == "MESD" and figure == "C" and theory == NONCONTEXTUAL:
                    for outcome in (1, 2):
                        spec = BoundSpec(scheme, figure, theory, c=args.c, p=p,
                                         omega=args.omega, outcome=outcome)
                        rows.append((scheme, f"C({outcome})", theory, eval_bound(spec)))
                    continue
                spec = BoundSpec(scheme, figure, theory, c=args.c, p=p)
                rows.append((scheme, figure, theory, eval_bound(spec)))
    for scheme, figure, theory, value in rows:
        print(f"{scheme:<5} {figure:<5} {theory:<14} {value:.9g}")
    return 0


def _cmd_sweep(args: argparse.Namespace, tols: config.Tolerances) -> int:
    targets = tuple(_parse_target(tok) for tok in args.target)
    spec = SweepSpec(
        variable=args.variable,
        start=args.start,
        stop=args.stop,
        points=args.points,
        fixed={"c": args.c, "p": args.p, "omega": args.omega},
        targets=targets,
    )
    result = run_sweep(spec)
    if args.out is None:
        print(",".join(result.header))
        for row in result.rows:
            print(",".join(format(v, ".9g") for v in row))
    else:
        write_csv(args.out, result.header, result.rows)
        print(f"wrote {args.out}")
    return 0


def _cmd_figure(args: argparse.Namespace, tols: config.Tolerances) -> int:
    path = emit_figure(FigureJob(args.id, args.out))
    print(f"wrote {path}")
    return 0


def _cmd_table(args: argparse.Namespace, tols: config.Tolerances) -> int:
    print(table_cmd(args.c, args.p, args.omega, tols))
    return 0


def _cmd_verify(args: argparse.Namespace, tols: config.Tolerances) -> int:
    report = verify_all(args.points, tols)
    print(report.render())
    return 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tols = config.from_env()
        return args.func(args, tols)
    except CtxsdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
