"""Operational matrix of integration and kernel matrices.

Row ``i`` of a matrix holds the coefficients, in ``phi_0 .. phi_m``, of the
transformed ``phi_i``.  For integration::

    integral_0^z phi(t) dt  ~=  Theta @ phi(z)

and for a kernel ``k``::

    integral_0^z k(z, x) phi(x) dx  ~=  Phi @ phi(z)

Entries are :class:`~bernvolterra.poly.Surd` in exact mode and floats otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .basis import BasisSet
from .errors import SpecificationError
from .exprparse import Expr, difference_power_form, eval_ast, free_vars, to_text
from .poly import Surd, inner_product
from .quadrature import QuadRule, gauss_legendre


@dataclass(frozen=True)
class OpMatrix:
    entries: tuple[tuple, ...]

    @property
    def order(self) -> int:
        return len(self.entries)

    @property
    def exact(self) -> bool:
        return bool(self.entries) and isinstance(self.entries[0][0], Surd)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)

    @classmethod
    def from_array(cls, a: np.ndarray) -> "OpMatrix":
        return cls(tuple(tuple(float(v) for v in row) for row in np.asarray(a)))

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        if not (self.exact and other.exact):
            return OpMatrix.from_array(self.to_array() @ other.to_array())
        n = self.order
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Surd(0)
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.coeff and b.coeff:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return OpMatrix(tuple(rows))

    def scale(self, c) -> "OpMatrix":
        if self.exact and isinstance(c, (int, Fraction)):
            return OpMatrix(tuple(tuple(v * c for v in row) for row in self.entries))
        return OpMatrix.from_array(float(c) * self.to_array())

    def power(self, k: int) -> "OpMatrix":
        if k < 1:
            raise ValueError("matrix power must be >= 1")
        result = self
        for _ in range(k - 1):
            result = result @ self
        return result


# ------------------------------------------------------------------ kernels

@dataclass(frozen=True)
class Constant:
    """``k(z, x) = c``."""
    c: Fraction | float

    def __call__(self, z, x):
        return np.full(np.broadcast(z, x).shape, float(self.c))

    def describe(self) -> str:
        return f"const({self.c})"


@dataclass(frozen=True)
class DifferencePower:
    """``k(z, x) = scale * (z - x)**j`` with ``j >= 1``."""
    j: int
    scale: Fraction | float = Fraction(1)

    def __post_init__(self):
        if self.j < 1:
            raise SpecificationError("difference-power kernel needs j >= 1")

    def __call__(self, z, x):
        return float(self.scale) * (np.asarray(z, dtype=float) - x) ** self.j

    def describe(self) -> str:
        return f"diffpow(j={self.j}, scale={self.scale})"


@dataclass(frozen=True)
class ExpressionKernel:
    """General kernel ``k(z, x)`` given as an expression in ``z`` and ``x``."""
    ast: Expr

    def __post_init__(self):
        extra = free_vars(self.ast) - {"z", "x"}
        if extra:
            raise SpecificationError(f"kernel references unbound variables {sorted(extra)}")

    def __call__(self, z, x):
        z, x = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(x, dtype=float))
        return np.broadcast_to(eval_ast(self.ast, {"z": z, "x": x}), z.shape)

    def describe(self) -> str:
        return f"expr({to_text(self.ast)})"


KernelSpec = Union[Constant, DifferencePower, ExpressionKernel]


def kernel_from_ast(ast: Expr) -> KernelSpec:
    """Route ``scale*(z-x)^j`` kernels to the closed forms, the rest to quadrature."""
    form = difference_power_form(ast)
    if form is None:
        return ExpressionKernel(ast)
    scale, j = form
    if j == 0:
        return Constant(scale)
    return DifferencePower(j, scale)


# ------------------------------------------------------------------ Theta

def theta_closed_form(m: int, exact: bool = True) -> OpMatrix:
    """Tridiagonal integration matrix of order ``m + 1``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    n = m + 1
    zero = Surd(0)
    rows = [[zero] * n for _ in range(n)]
    rows[0][0] = Surd(Fraction(1, 2))
    for i in range(n):
        if i >= 1:
            rows[i][i - 1] = -Surd(Fraction(1, 2)) / Surd.sqrt((2 * i - 1) * (2 * i + 1))
        if i + 1 < n:
            rows[i][i + 1] = Surd(Fraction(1, 2)) / Surd.sqrt((2 * i + 1) * (2 * i + 3))
    theta = OpMatrix(tuple(tuple(r) for r in rows))
    return theta if exact else OpMatrix.from_array(theta.to_array())


def theta_by_projection(b: BasisSet) -> OpMatrix:
    """``Theta[i][j] = <integral_0^z phi_i, phi_j>`` computed exactly."""
    phis = b.phis
    prims = [p.antiderivative() for p in phis]
    return OpMatrix(tuple(tuple(inner_product(q, p) for p in phis) for q in prims))


def phi_for_kernel(k: KernelSpec, m: int, b: BasisSet | None = None,
                   rule: QuadRule | None = None, exact: bool = False) -> OpMatrix:
    """Kernel matrix for ``integral_0^z k(z, x) phi(x) dx``.

    Constant ``c`` gives ``c * Theta``; ``scale * (z - x)^j`` gives
    ``scale * j! * Theta^(j+1)`` by the repeated-integration identity.  Any
    other kernel is projected with nested Gauss rules.
    """
    if isinstance(k, Constant):
        c = k.c if exact else float(k.c)
        return theta_closed_form(m, exact=exact).scale(c)
    if isinstance(k, DifferencePower):
        factor = k.scale * math.factorial(k.j)
        if not exact:
            factor = float(factor)
        return theta_closed_form(m, exact=exact).power(k.j + 1).scale(factor)
    if isinstance(k, ExpressionKernel):
        if exact:
            raise SpecificationError("expression kernels have no exact kernel matrix")
        return OpMatrix.from_array(_project_kernel(k, b or BasisSet(m), rule or gauss_legendre()))
    raise SpecificationError(f"unsupported kernel {k!r}")


def _project_kernel(k: KernelSpec, b: BasisSet, rule: QuadRule) -> np.ndarray:
    zs, w = rule.nodes, rule.weights
    xs = zs[:, None] * zs[None, :]                    # inner nodes on [0, z_a]
    kv = k(zs[:, None], xs)                           # (a, b)
    phi_inner = b.eval_float(xs)                      # (i, a, b)
    g = zs[None, :] * np.einsum("iab,b,ab->ia", phi_inner, w, kv)
    phi_outer = b.eval_float(zs)                      # (j, a)
    return np.einsum("ia,a,ja->ij", g, w, phi_outer)
