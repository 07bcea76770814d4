"""Line-oriented problem files.

::

    # comment
    f      = 6*x + 3*x^2
    kernel = const(-1)            # or diffpow(j=2, scale=1) or expr(z - x)
    order  = 5
    exact  = 6*x

``f`` and ``kernel`` are required; keys are lowercase and case-sensitive.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, ProblemFileError, SpecificationError
from .exprparse import parse
from .opmatrix import Constant, DifferencePower, KernelSpec, kernel_from_ast
from .solver import VolterraProblem

KEYS = ("f", "kernel", "order", "exact")
DEFAULT_ORDER = 9

_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_CONST = re.compile(r"^const\((.*)\)$")
_DIFFPOW = re.compile(r"^diffpow\(\s*j\s*=\s*([^,]*?)\s*,\s*scale\s*=\s*(.*?)\s*\)$")
_EXPR = re.compile(r"^expr\((.*)\)$")


def _number(text: str, lineno: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ProblemFileError(f"line {lineno}: invalid number {text.strip()!r}") from None


def _expr(text: str, key: str, lineno: int):
    try:
        return parse(text)
    except ParseError as exc:
        raise ProblemFileError(f"line {lineno}: {key}: {exc}") from exc


def parse_kernel(text: str, lineno: int = 0) -> KernelSpec:
    text = text.strip()
    if m := _CONST.match(text):
        return Constant(_number(m.group(1), lineno))
    if m := _DIFFPOW.match(text):
        j = m.group(1)
        if not j.isdigit() or int(j) < 1:
            raise ProblemFileError(f"line {lineno}: diffpow needs an integer j >= 1, got {j!r}")
        return DifferencePower(int(j), _number(m.group(2), lineno))
    if m := _EXPR.match(text):
        try:
            return kernel_from_ast(_expr(m.group(1), "kernel", lineno))
        except SpecificationError as exc:
            raise ProblemFileError(f"line {lineno}: {exc}") from exc
    raise ProblemFileError(
        f"line {lineno}: kernel must be const(<number>), diffpow(j=<int>, scale=<number>) or expr(<expression>)"
    )


def parse_problem(text: str, order: int | None = None) -> VolterraProblem:
    """Build a problem from file text; ``order`` overrides the file's value."""
    values: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise ProblemFileError(f"line {lineno}: expected 'key = value'")
        key, value = m.group(1), m.group(2).strip()
        if key not in KEYS:
            raise ProblemFileError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ProblemFileError(f"line {lineno}: duplicate key {key!r}")
        values[key] = (value, lineno)
    for key in ("f", "kernel"):
        if key not in values:
            raise ProblemFileError(f"missing required key {key!r}")

    f = _expr(values["f"][0], "f", values["f"][1])
    kernel = parse_kernel(*values["kernel"])
    exact = _expr(values["exact"][0], "exact", values["exact"][1]) if "exact" in values else None
    if order is None:
        if "order" in values:
            text_order, lineno = values["order"]
            if not text_order.isdigit():
                raise ProblemFileError(f"line {lineno}: order must be a non-negative integer")
            order = int(text_order)
        else:
            order = DEFAULT_ORDER
    try:
        return VolterraProblem(f, kernel, order, exact)
    except SpecificationError as exc:
        raise ProblemFileError(str(exc)) from exc


def load_problem(path: str | Path, order: int | None = None) -> VolterraProblem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    return parse_problem(text, order)
