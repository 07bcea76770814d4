"""Dense univariate polynomials on [0, 1] over exact rationals or floats.

Coefficients are stored in ascending degree order.  Exact polynomials hold
:class:`fractions.Fraction` coefficients; float polynomials hold Python floats.
Plain ``int`` values are accepted by either kind and coerced on construction.

Two small companions live here as well:

* :class:`Surd` -- an exact number ``q * sqrt(r)`` with rational ``q`` and a
  square-free positive integer ``r``.
* :class:`RootPoly` -- ``sqrt(r) * p`` for an exact polynomial ``p``.  The
  orthonormal basis functions carry irrational normalisation constants; this
  keeps their inner products exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable

import numpy as np

from .errors import IncommensurableSurdError, ScalarKindError

EXACT = "exact"
FLOAT = "float"


def scalar_kind(value) -> str | None:
    """Return ``"exact"``, ``"float"`` or ``None`` for kind-neutral ints."""
    if isinstance(value, bool):
        raise ScalarKindError("booleans are not polynomial scalars")
    if isinstance(value, int):
        return None
    if isinstance(value, _RationalABC):
        return EXACT
    if isinstance(value, (float, np.floating)):
        return FLOAT
    raise ScalarKindError(f"unsupported scalar type {type(value).__name__}")


def _merge_kinds(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ScalarKindError(f"cannot mix {a} and {b} scalars")


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = outer**2 * inner`` with ``inner`` square-free.

    Trial division; intended for the smooth integers that arise from basis
    normalisation, not for arbitrary large inputs.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    outer, inner = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            outer *= p ** (e // 2)
            if e % 2:
                inner *= p
        p += 1 if p == 2 else 2
    return outer, inner * n


class Surd:
    """Exact real number ``coeff * sqrt(radicand)``."""

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff=0, radicand: int = 1):
        coeff = Fraction(coeff)
        radicand = int(radicand)
        if coeff == 0:
            radicand = 1
        elif radicand != 1:
            outer, radicand = squarefree_split(radicand)
            coeff *= outer
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def sqrt(cls, value) -> "Surd":
        """Exact square root of a non-negative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(a/b) = sqrt(a*b) / b
        return cls(Fraction(1, value.denominator), value.numerator * value.denominator)

    @staticmethod
    def _lift(other) -> "Surd | None":
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return Surd(other)
        return None

    def is_rational(self) -> bool:
        return self.radicand == 1

    def rational(self) -> Fraction:
        if self.radicand != 1:
            raise IncommensurableSurdError(f"{self!r} is irrational")
        return self.coeff

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.coeff == 0:
            return self
        if self.coeff == 0:
            return o
        if o.radicand != self.radicand:
            raise IncommensurableSurdError(f"cannot add {self!r} and {o!r} exactly")
        return Surd(self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.coeff, self.radicand)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Surd(self.coeff * o.coeff, self.radicand * o.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.coeff == 0:
            raise ZeroDivisionError("division by zero surd")
        # q1 sqrt(r1) / (q2 sqrt(r2)) = q1/(q2 r2) sqrt(r1 r2)
        return Surd(self.coeff / (o.coeff * o.radicand), self.radicand * o.radicand)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __abs__(self):
        return Surd(abs(self.coeff), self.radicand)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeff == o.coeff and self.radicand == o.radicand

    def __hash__(self):
        if self.radicand == 1:
            return hash(self.coeff)
        return hash((self.coeff, self.radicand))

    def __repr__(self):
        if self.radicand == 1:
            return f"Surd({self.coeff})"
        return f"Surd({self.coeff}, sqrt {self.radicand})"

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        num, den = self.coeff.numerator, self.coeff.denominator
        head = "" if num == 1 else "-" if num == -1 else f"{num}*"
        s = f"{head}sqrt({self.radicand})"
        return s if den == 1 else f"{s}/{den}"


def _coerce_coeffs(coeffs: Iterable) -> tuple[tuple, str | None]:
    raw = list(coeffs)
    kind = None
    for c in raw:
        kind = _merge_kinds(kind, scalar_kind(c))
    if kind == FLOAT:
        out = [float(c) for c in raw]
        zero = 0.0
    else:
        out = [Fraction(c) for c in raw]
        zero = Fraction(0)
    while out and out[-1] == zero:
        out.pop()
    return tuple(out), kind


class Poly:
    """Immutable dense polynomial, ``coeffs[k]`` multiplying ``x**k``.

    The zero polynomial has an empty coefficient tuple and no scalar kind, so it
    combines with either kind.  A polynomial built only from ``int`` values is
    exact.
    """

    __slots__ = ("coeffs", "_kind")

    def __init__(self, coeffs: Iterable = ()):
        cs, kind = _coerce_coeffs(coeffs)
        if kind is None and cs:
            kind = EXACT
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @property
    def kind(self) -> str | None:
        return self._kind

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "Poly") -> None:
        _merge_kinds(self._kind, other._kind)

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, float, _RationalABC)):
                other = Poly.constant(other)
            else:
                return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, float, _RationalABC)):
                other = Poly.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, float, _RationalABC)) and not isinstance(other, bool):
                _merge_kinds(self._kind, scalar_kind(other))
                return Poly(c * other for c in self.coeffs)
            return NotImplemented
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            return NotImplemented
        if self._kind == FLOAT:
            return Poly(c / scalar for c in self.coeffs)
        return Poly(c / Fraction(scalar) for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1.0] if self._kind == FLOAT else [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x`` and exact coefficients."""
        if isinstance(x, (float, np.floating, np.ndarray)):
            coeffs = [float(c) for c in self.coeffs]
            acc = np.zeros_like(x, dtype=float) if isinstance(x, np.ndarray) else 0.0
        else:
            coeffs = self.coeffs
            acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        if self._kind == FLOAT:
            return Poly([0.0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def compose(self, inner: "Poly") -> "Poly":
        """Return ``self(inner(x))``."""
        result = Poly()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def shift(self, h) -> "Poly":
        """Return ``self(x + h)``."""
        return self.compose(Poly([h, 1]))

    def to_float(self) -> "Poly":
        return Poly(float(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, float, _RationalABC)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) if isinstance(c, Fraction) else c for c in self.coeffs]})"

    def to_text(self, var: str = "x") -> str:
        """Render in the expression grammar, e.g. ``-1 + 2*x``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                term = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                term = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Binary ``add``, ``sub`` or ``mul`` of two polynomials of the same kind."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: Poly, x):
    return p(x)


def poly_antiderivative(p: Poly) -> Poly:
    return p.antiderivative()


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


class RootPoly:
    """``sqrt(radicand) * poly`` with an exact polynomial and square-free radicand."""

    __slots__ = ("radicand", "poly")

    def __init__(self, radicand: int, poly: Poly):
        if poly.kind == FLOAT:
            raise ScalarKindError("RootPoly requires an exact polynomial")
        outer, inner = squarefree_split(int(radicand))
        if poly.is_zero():
            inner, outer = 1, 1
        object.__setattr__(self, "radicand", inner)
        object.__setattr__(self, "poly", poly * outer if outer != 1 else poly)

    def __setattr__(self, name, value):
        raise AttributeError("RootPoly is immutable")

    @classmethod
    def from_surd(cls, factor: Surd, poly: Poly) -> "RootPoly":
        return cls(factor.radicand, poly * factor.coeff)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def leading(self) -> Surd:
        return Surd(self.poly.leading(), self.radicand)

    def coefficient(self, k: int) -> Surd:
        c = self.poly.coeffs[k] if k < len(self.poly.coeffs) else 0
        return Surd(c, self.radicand)

    def __call__(self, x):
        if isinstance(x, (float, np.floating, np.ndarray)):
            return math.sqrt(self.radicand) * self.poly(x)
        return Surd(self.poly(Fraction(x)), self.radicand)

    def __neg__(self):
        return RootPoly(self.radicand, -self.poly)

    def __add__(self, other):
        if not isinstance(other, RootPoly):
            return NotImplemented
        if other.poly.is_zero():
            return self
        if self.poly.is_zero():
            return other
        if other.radicand != self.radicand:
            raise IncommensurableSurdError("cannot add RootPolys with different radicands")
        return RootPoly(self.radicand, self.poly + other.poly)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Surd):
            return RootPoly(self.radicand * other.radicand, self.poly * other.coeff)
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return RootPoly(self.radicand, self.poly * Fraction(other))
        return NotImplemented

    __rmul__ = __mul__

    def antiderivative(self) -> "RootPoly":
        return RootPoly(self.radicand, self.poly.antiderivative())

    def derivative(self) -> "RootPoly":
        return RootPoly(self.radicand, self.poly.derivative())

    def to_float(self) -> Poly:
        s = math.sqrt(self.radicand)
        return Poly(float(c) * s for c in self.poly.coeffs)

    def __eq__(self, other):
        if isinstance(other, RootPoly):
            return self.radicand == other.radicand and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.radicand, self.poly))

    def __repr__(self):
        return f"RootPoly(sqrt {self.radicand}, {self.poly!r})"

    def to_text(self, var: str = "x") -> str:
        """Render as ``g*sqrt(r)*(p)`` with ``p`` a primitive integer polynomial."""
        if self.poly.is_zero():
            return "0"
        coeffs = self.poly.coeffs
        den = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        prim = Poly(i // g for i in ints)
        factor = Surd(Fraction(g, den), self.radicand)
        body = prim.to_text(var)
        if factor == 1:
            return body
        if prim.degree == 0:
            return str(factor)
        return f"{factor}*({body})"


def inner_product(p, q):
    """L2[0, 1] inner product via monomial moments ``1/(k+1)``.

    Two exact polynomials give a ``Fraction``; two float polynomials a float;
    two :class:`RootPoly` values a :class:`Surd`.
    """
    if isinstance(p, RootPoly) and isinstance(q, RootPoly):
        return Surd(inner_product(p.poly, q.poly), p.radicand * q.radicand)
    if isinstance(p, RootPoly) or isinstance(q, RootPoly):
        raise ScalarKindError("cannot pair a RootPoly with a plain polynomial")
    kind = _merge_kinds(p.kind, q.kind)
    prod = p * q
    if kind == FLOAT:
        return math.fsum(c / (k + 1) for k, c in enumerate(prod.coeffs))
    return sum((c / (k + 1) for k, c in enumerate(prod.coeffs)), Fraction(0))

