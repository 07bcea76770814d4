"""Command-line front end.

Subcommands::

    bernvolterra solve FILE [--order M] [--grid N] [--format csv|table] [--out PATH]
    bernvolterra basis [--order M] [--check]
    bernvolterra theta [--order M]
    bernvolterra convergence FILE [--orders 3,5,7,9]
    bernvolterra verify FILE [--oracle-steps N] [--order M]

Exit codes: 0 success, 1 problem error (singular system, domain error, failed
check), 2 file, argument or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .basis import check_oracle, check_orthonormal, gram_schmidt_basis
from .errors import ProblemFileError, VolterraError
from .opmatrix import theta_closed_form
from .problemfile import load_problem
from .solver import (ORACLE_STEPS, GRID_POINTS, convergence_study, evaluate, grid,
                     oracle_solve, solve)

EXIT_OK, EXIT_PROBLEM, EXIT_INPUT = 0, 1, 2
MAX_BASIS_ORDER = 64
MAX_CHECK_ORDER = 12
VERIFY_TOLERANCE = 5e-4


def fmt(v: float) -> str:
    return format(float(v), ".17g")


@dataclass
class ResultTable:
    zeta: np.ndarray
    y_approx: np.ndarray
    y_exact: np.ndarray | None = None

    @property
    def abs_err(self) -> np.ndarray | None:
        return None if self.y_exact is None else np.abs(self.y_approx - self.y_exact)

    @property
    def max_abs_err(self) -> float | None:
        err = self.abs_err
        return None if err is None else float(err.max())

    @property
    def header(self) -> list[str]:
        cols = ["zeta", "y_approx"]
        return cols + ["y_exact", "abs_err"] if self.y_exact is not None else cols

    def rows(self):
        cols = [self.zeta, self.y_approx]
        if self.y_exact is not None:
            cols += [self.y_exact, self.abs_err]
        for vals in zip(*cols):
            yield [fmt(v) for v in vals]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows())
        return buf.getvalue()

    def to_text(self) -> str:
        width = 24
        lines = ["".join(h.rjust(width) for h in self.header)]
        lines += ["".join(v.rjust(width) for v in row) for row in self.rows()]
        if self.max_abs_err is not None:
            lines.append(f"max abs error: {fmt(self.max_abs_err)}")
        return "\n".join(lines) + "\n"


def result_table(solution, grid_n: int = GRID_POINTS) -> ResultTable:
    z = grid(grid_n)
    exact = solution.problem.exact_values(z) if solution.problem.exact is not None else None
    return ResultTable(z, evaluate(solution, z), exact)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _orders(text: str) -> list[int]:
    try:
        orders = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from None
    if not orders or any(m < 1 for m in orders):
        raise argparse.ArgumentTypeError("orders must be integers >= 1")
    return orders


# ------------------------------------------------------------------ commands

def cmd_solve(args) -> int:
    try:
        problem = load_problem(args.file, args.order)
    except ProblemFileError as exc:
        _err(str(exc))
        return EXIT_INPUT
    if args.grid < 2:
        _err("--grid must be at least 2")
        return EXIT_INPUT
    try:
        table = result_table(solve(problem, diagnostics=False), args.grid)
    except VolterraError as exc:
        _err(str(exc))
        return EXIT_PROBLEM
    text = table.to_csv() if args.format == "csv" else table.to_text()
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            _err(f"cannot write {args.out}: {exc}")
            return EXIT_INPUT
    if table.max_abs_err is not None:
        print(f"max_abs_err = {fmt(table.max_abs_err)}", file=sys.stderr)
    return EXIT_OK


def cmd_basis(args) -> int:
    limit = MAX_CHECK_ORDER if args.check else MAX_BASIS_ORDER
    if args.order > limit:
        _err(f"order overflow: --order {args.order} exceeds {limit}"
             + (" in --check mode" if args.check else ""))
        return EXIT_INPUT
    basis = gram_schmidt_basis(args.order)
    for phi in basis.phis:
        print(phi.to_text())
    if not args.check:
        return EXIT_OK
    ortho, oracle = check_orthonormal(basis), check_oracle(basis)
    print(f"orthonormality: {'ok' if ortho else 'FAILED'}", file=sys.stderr)
    print(f"legendre oracle: {'ok' if oracle else 'FAILED'}", file=sys.stderr)
    return EXIT_OK if ortho and oracle else EXIT_PROBLEM


def cmd_theta(args) -> int:
    theta = theta_closed_form(args.order).to_array()
    for row in theta:
        print(", ".join(fmt(v) for v in row))
    return EXIT_OK


def cmd_convergence(args) -> int:
    try:
        problem = load_problem(args.file)
    except ProblemFileError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        rows = convergence_study(problem, args.orders, workers=args.workers)
    except VolterraError as exc:
        _err(str(exc))
        return EXIT_PROBLEM
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["order", "max_abs_err", "solve_time_ms"])
    for r in rows:
        if r.error is not None:
            _err(f"order {r.order}: {r.error}")
        err = "failed" if r.max_abs_err is None else fmt(r.max_abs_err)
        w.writerow([r.order, err, f"{r.solve_time_ms:.3f}"])
    return EXIT_OK if any(r.error is None for r in rows) else EXIT_PROBLEM


def cmd_verify(args) -> int:
    if args.oracle_steps < 8:
        _err("--oracle-steps must be at least 8")
        return EXIT_INPUT
    try:
        problem = load_problem(args.file, args.order)
    except ProblemFileError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        ref = oracle_solve(problem, args.oracle_steps)
        deviation = float(np.max(np.abs(evaluate(solve(problem, diagnostics=False), ref.zeta) - ref.y)))
    except VolterraError as exc:
        _err(str(exc))
        return EXIT_PROBLEM
    ok = deviation <= VERIFY_TOLERANCE
    print(f"max_deviation = {fmt(deviation)}")
    print(f"tolerance = {VERIFY_TOLERANCE:g}: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_PROBLEM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernvolterra",
        description="Solve linear Volterra integral equations of the second kind on [0,1] "
                    "with an orthonormal Bernoulli-polynomial basis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a problem file and tabulate the solution")
    p.add_argument("file")
    p.add_argument("--order", type=_positive_int, help="truncation order (overrides the file)")
    p.add_argument("--grid", type=int, default=GRID_POINTS, help="number of output points")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("basis", help="print the orthonormal basis polynomials")
    p.add_argument("--order", type=_positive_int, default=9)
    p.add_argument("--check", action="store_true", help="verify exact orthonormality and the Legendre oracle")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("theta", help="print the operational matrix of integration")
    p.add_argument("--order", type=_positive_int, default=9)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("convergence", help="max error against order")
    p.add_argument("file")
    p.add_argument("--orders", type=_orders, default=[3, 5, 7, 9])
    p.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("verify", help="compare against the product trapezoidal oracle")
    p.add_argument("file")
    p.add_argument("--oracle-steps", type=int, default=ORACLE_STEPS)
    p.add_argument("--order", type=_positive_int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
