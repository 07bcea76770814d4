"""Scalar expressions for forcing terms, kernels and exact solutions.

Grammar (whitespace is insignificant)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom ("^" unary)?            # right associative
    atom    := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")"
    NUMBER  := digits ["." digits] [("e" | "E") ["+" | "-"] digits]
             | "." digits [exponent]

Names are the variables ``x`` and ``z``, the constants ``pi`` and ``e``, and the
functions ``exp sin cos sinh cosh log sqrt``.  ``-x^2`` parses as ``-(x^2)``.
Evaluation accepts floats or numpy arrays for the variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import EvalError, ParseError
from .poly import Poly

VARIABLES = ("x", "z")
CONSTANTS = {"pi": np.pi, "e": np.e}
FUNCTIONS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "log": np.log,
    "sqrt": np.sqrt,
}
MAX_POLY_EXPONENT = 256
MAX_DEPTH = 200
MAX_NESTING = 100


class UnknownIdentifierError(ParseError):
    pass


@dataclass(frozen=True)
class Number:
    value: Fraction
    text: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Number | Var | Const | Unary | Binary | Call


def number(value: int) -> Number:
    return Number(Fraction(value), str(value))


# ---------------------------------------------------------------- tokenizer

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)
_WS = re.compile(r"\s*")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    n = len(text)
    while True:
        pos = _WS.match(text, pos).end()
        if pos >= n:
            toks.append(_Tok("end", "", pos))
            return toks
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos,
                             {"number", "name", "operator"})
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()


# ---------------------------------------------------------------- parser

_OPERAND_START = {"number", "name", "'('", "'-'", "'+'"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.level = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"unexpected {what}", self.text, t.pos, expected)

    def _expect(self, op: str) -> None:
        if self.tok.kind == "op" and self.tok.text == op:
            self._advance()
        else:
            raise self._fail({f"'{op}'"})

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self._fail({"operator", "end of input"})
        if _depth(node) > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.text, 0)
        return node

    def _nest(self) -> None:
        self.level += 1
        if self.level > MAX_NESTING:
            raise ParseError("expression nested too deeply", self.text, self.tok.pos)

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            self._nest()
            operand = self.unary()
            self.level -= 1
            return Unary("-", operand) if op == "-" else operand
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            self._nest()
            exponent = self.unary()
            self.level -= 1
            return Binary("^", base, exponent)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self._advance()
            return Number(Fraction(t.text), t.text)
        if t.kind == "name":
            self._advance()
            if t.text in FUNCTIONS:
                self._expect("(")
                self._nest()
                arg = self.expr()
                self._expect(")")
                self.level -= 1
                return Call(t.text, arg)
            if self.tok.kind == "op" and self.tok.text == "(":
                raise UnknownIdentifierError(f"unknown function {t.text!r}", self.text, t.pos,
                                             set(FUNCTIONS))
            if t.text in VARIABLES:
                return Var(t.text)
            if t.text in CONSTANTS:
                return Const(t.text)
            raise UnknownIdentifierError(f"unknown identifier {t.text!r}", self.text, t.pos,
                                         set(VARIABLES) | set(CONSTANTS))
        if t.kind == "op" and t.text == "(":
            self._advance()
            self._nest()
            node = self.expr()
            self._expect(")")
            self.level -= 1
            return node
        raise self._fail(_OPERAND_START)


def _depth(node: Expr) -> int:
    deepest = 0
    stack = [(node, 1)]
    while stack:
        n, d = stack.pop()
        deepest = max(deepest, d)
        if isinstance(n, Binary):
            stack += [(n.left, d + 1), (n.right, d + 1)]
        elif isinstance(n, Unary):
            stack.append((n.operand, d + 1))
        elif isinstance(n, Call):
            stack.append((n.arg, d + 1))
    return deepest


def parse(text: str) -> Expr:
    """Parse expression text into an immutable AST; raises :class:`ParseError`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------- printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node: Expr) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return 3
    return 5


def to_text(node: Expr) -> str:
    """Minimal-parenthesis rendering; ``parse(to_text(a)) == a``."""
    if isinstance(node, Number):
        return node.text
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.arg)})"
    if isinstance(node, Unary):
        inner = to_text(node.operand)
        return "-" + (inner if _prec(node.operand) >= 3 else f"({inner})")
    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def free_vars(node: Expr) -> frozenset[str]:
    if isinstance(node, Var):
        return frozenset({node.name})
    if isinstance(node, Unary):
        return free_vars(node.operand)
    if isinstance(node, Call):
        return free_vars(node.arg)
    if isinstance(node, Binary):
        return free_vars(node.left) | free_vars(node.right)
    return frozenset()


# ---------------------------------------------------------------- evaluation

def _domain_check(ok, what: str) -> None:
    if not np.all(ok):
        raise EvalError(f"domain error: {what}")


def eval_ast(node: Expr, bindings: dict):
    """IEEE double evaluation; variables may be bound to floats or arrays."""
    with np.errstate(all="ignore"):
        value = _eval(node, bindings)
    if not np.all(np.isfinite(value)):
        raise EvalError("expression evaluated to a non-finite value")
    return value


def _eval(node: Expr, env: dict):
    if isinstance(node, Number):
        return float(node.value)
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise EvalError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Unary):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        if node.fn == "log":
            _domain_check(np.asarray(arg) > 0, "log of a non-positive value")
        elif node.fn == "sqrt":
            _domain_check(np.asarray(arg) >= 0, "sqrt of a negative value")
        return FUNCTIONS[node.fn](arg)
    a = _eval(node.left, env)
    b = _eval(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        _domain_check(np.asarray(b) != 0, "division by zero")
        return a / b
    result = np.power(a, b)
    _domain_check(~np.isnan(result), "non-real power")
    return result


# ---------------------------------------------------------------- classification

# Bivariate polynomial in (z, x): {(deg_z, deg_x): Fraction}
_BiPoly = dict


def _bi_add(a: _BiPoly, b: _BiPoly, sign: int = 1) -> _BiPoly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def _bi_mul(a: _BiPoly, b: _BiPoly) -> _BiPoly:
    out: dict = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + u * v
    return {k: v for k, v in out.items() if v != 0}


def _bi_const(bp: _BiPoly) -> Fraction | None:
    if not bp:
        return Fraction(0)
    if set(bp) == {(0, 0)}:
        return bp[(0, 0)]
    return None


def _bipoly(node: Expr) -> _BiPoly | None:
    if isinstance(node, Number):
        return {(0, 0): node.value} if node.value else {}
    if isinstance(node, Var):
        return {(1, 0): Fraction(1)} if node.name == "z" else {(0, 1): Fraction(1)}
    if isinstance(node, (Const, Call)):
        return None
    if isinstance(node, Unary):
        inner = _bipoly(node.operand)
        return None if inner is None else {k: -v for k, v in inner.items()}
    left = _bipoly(node.left)
    if left is None:
        return None
    right = _bipoly(node.right)
    if right is None:
        return None
    if node.op == "+":
        return _bi_add(left, right)
    if node.op == "-":
        return _bi_add(left, right, -1)
    if node.op == "*":
        return _bi_mul(left, right)
    if node.op == "/":
        c = _bi_const(right)
        if not c:
            return None
        return {k: v / c for k, v in left.items()}
    e = _bi_const(right)
    if e is None or e.denominator != 1 or not 0 <= e <= MAX_POLY_EXPONENT:
        return None
    out: _BiPoly = {(0, 0): Fraction(1)}
    for _ in range(int(e)):
        out = _bi_mul(out, left)
    return out


def classify_polynomial(node: Expr) -> Poly | None:
    """Exact polynomial in the expression's single variable, or ``None``."""
    names = free_vars(node)
    if len(names) > 1:
        return None
    bp = _bipoly(node)
    if bp is None:
        return None
    if not bp:
        return Poly()
    axis = 0 if names == {"z"} else 1
    deg = max(k[axis] for k in bp)
    coeffs = [Fraction(0)] * (deg + 1)
    for k, v in bp.items():
        coeffs[k[axis]] = v
    return Poly(coeffs)


def difference_power_form(node: Expr) -> tuple[Fraction, int] | None:
    """Detect ``scale * (z - x)^j`` after expansion; ``j = 0`` means constant."""
    bp = _bipoly(node)
    if bp is None:
        return None
    if not bp:
        return Fraction(0), 0
    degrees = {a + b for a, b in bp}
    if len(degrees) != 1:
        return None
    j = degrees.pop()
    scale = bp.get((j, 0))
    if scale is None:
        return None
    for b in range(j + 1):
        want = scale * comb(j, b) * (-1) ** b
        if bp.get((j - b, b), 0) != want:
            return None
    return scale, j
