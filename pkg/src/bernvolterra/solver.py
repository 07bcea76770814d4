"""Spectral solver for linear Volterra equations of the second kind on [0, 1]::

    y(z) = f(z) + integral_0^z k(z, x) y(x) dx

Writing ``y = C . phi`` and ``f = F . phi`` turns the equation into
``(I - Phi)^T C = F`` where ``Phi`` is the kernel matrix of
:mod:`bernvolterra.opmatrix`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .basis import BasisSet
from .errors import OracleError, SolverError, SpecificationError, VolterraError
from .exprparse import Expr, classify_polynomial, eval_ast, free_vars
from .opmatrix import Constant, KernelSpec, OpMatrix, phi_for_kernel
from .poly import Poly, RootPoly, Surd, inner_product
from .quadrature import QuadRule, gauss_legendre

GRID_POINTS = 1001
ORACLE_STEPS = 4096
MAX_CONDITION = 1e12


def grid(n: int = GRID_POINTS) -> np.ndarray:
    if n < 2:
        raise ValueError("grid needs at least two points")
    return np.linspace(0.0, 1.0, n)


@dataclass(frozen=True)
class VolterraProblem:
    f: Expr | Poly
    kernel: KernelSpec
    order: int
    exact: Expr | None = None

    def __post_init__(self):
        if self.order < 0:
            raise SpecificationError("order must be non-negative")
        for name, ast in (("f", self.f), ("exact", self.exact)):
            if ast is None or isinstance(ast, Poly):
                continue
            extra = free_vars(ast) - {"x"}
            if extra:
                raise SpecificationError(f"{name} may only use the variable x, found {sorted(extra)}")

    def with_order(self, m: int) -> "VolterraProblem":
        return VolterraProblem(self.f, self.kernel, m, self.exact)

    def f_poly(self) -> Poly | None:
        if isinstance(self.f, Poly):
            return self.f
        return classify_polynomial(self.f)

    def f_values(self, x):
        return _eval_unary(self.f, x)

    def exact_values(self, x):
        if self.exact is None:
            raise SpecificationError("problem has no exact solution")
        return _eval_unary(self.exact, x)


def _eval_unary(f: Expr | Poly, x):
    x = np.asarray(x, dtype=float)
    if isinstance(f, Poly):
        return f.to_float()(x) if f.coeffs else np.zeros_like(x)
    return np.broadcast_to(eval_ast(f, {"x": x}), x.shape).astype(float)


@dataclass(frozen=True)
class CoeffVector:
    values: np.ndarray
    role: str  # "forcing" or "solution"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True)
class Diagnostics:
    residual: float
    tail: float
    condition: float
    error_bound: float
    bound_is_heuristic: bool = True


@dataclass(frozen=True)
class Solution:
    basis: BasisSet
    c: CoeffVector
    problem: VolterraProblem
    forcing: CoeffVector
    phi: np.ndarray
    diagnostics: Diagnostics | None = None
    exact_c: tuple[Surd, ...] | None = field(default=None, compare=False)

    def __call__(self, x):
        return evaluate(self, x)


# ------------------------------------------------------------------ projection

def project_exact(p: Poly, b: BasisSet) -> list[Surd]:
    """``<p, phi_k>`` exactly for an exact polynomial ``p``."""
    rp = RootPoly(1, p)
    return [inner_product(rp, phi) for phi in b.phis]


def project(f: Expr | Poly, b: BasisSet, rule: QuadRule | None = None) -> CoeffVector:
    """Coefficients ``F_k = <f, phi_k>``; exact when ``f`` is a polynomial."""
    poly = f if isinstance(f, Poly) else classify_polynomial(f)
    if poly is not None and poly.kind != "float":
        values = np.array([float(s) for s in project_exact(poly, b)])
    else:
        rule = rule or gauss_legendre()
        fx = _eval_unary(f, rule.nodes)
        values = b.eval_float(rule.nodes) @ (rule.weights * fx)
    return CoeffVector(values, "forcing")


# ------------------------------------------------------------------ solving

def solve_coefficients(phi: np.ndarray, forcing: np.ndarray) -> tuple[np.ndarray, float]:
    """Solve ``(I - phi)^T c = forcing`` by LU with partial pivoting."""
    a = np.eye(len(forcing)) - np.asarray(phi).T
    cond = float(np.linalg.cond(a))
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SolverError(f"I - Phi is singular or ill-conditioned (cond {cond:.3g}); try a different order")
    try:
        c = np.linalg.solve(a, forcing)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"I - Phi is singular ({exc}); try a different order") from None
    return c, cond


def _solve_exact(p: VolterraProblem, b: BasisSet) -> tuple[Surd, ...]:
    # Entries scale like sqrt(2i+1)*sqrt(2j+1), so with C_k = u_k c_k and
    # F_k = u_k f_k (u_k = sqrt(2k+1)) the system becomes purely rational.
    poly = p.f_poly()
    n = p.order + 1
    theta = phi_for_kernel(p.kernel, p.order, exact=True)
    u = [Surd.sqrt(2 * k + 1) for k in range(n)]
    rhs = [(s / u[j]).rational() for j, s in enumerate(project_exact(poly, b))]
    a = [[(((1 if i == j else 0) - theta[i, j]) * u[i] / u[j]).rational() for i in range(n)]
         for j in range(n)]
    c = _fraction_gauss(a, rhs)
    return tuple(u[k] * c[k] for k in range(n))


def _fraction_gauss(a: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    m = [row[:] + [r] for row, r in zip(a, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SolverError("I - Phi is singular in exact arithmetic; try a different order")
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col] / m[col][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def solve(p: VolterraProblem, rule: QuadRule | None = None, exact: bool = False,
          diagnostics: bool = True) -> Solution:
    """Solve ``p`` at its truncation order.

    ``exact=True`` is available for constant kernels with a polynomial forcing
    term and returns exact :class:`Surd` coefficients in ``exact_c``.
    """
    rule = rule or gauss_legendre()
    b = BasisSet(p.order)
    forcing = project(p.f, b, rule)
    phi = phi_for_kernel(p.kernel, p.order, b, rule).to_array()
    exact_c = None
    if exact:
        poly = p.f_poly()
        if not isinstance(p.kernel, Constant) or poly is None or poly.kind == "float":
            raise SpecificationError("exact solve needs a constant kernel and polynomial f")
        exact_c = _solve_exact(p, b)
        c = np.array([float(s) for s in exact_c])
        cond = float(np.linalg.cond(np.eye(len(c)) - phi.T))
    else:
        c, cond = solve_coefficients(phi, forcing.values)
    sol = Solution(b, CoeffVector(c, "solution"), p, forcing, phi, exact_c=exact_c)
    if not diagnostics:
        return sol
    tail = float(np.max(np.abs(c[-2:])))
    diag = Diagnostics(residual(sol, rule=rule), tail, cond, error_bound(sol))
    return Solution(b, sol.c, p, forcing, phi, diag, exact_c)


def evaluate(s: Solution, x):
    """``sum_k c_k phi_k(x)`` for a float or array ``x``."""
    vals = np.tensordot(s.c.values, s.basis.eval_float(x), axes=1)
    return float(vals) if np.ndim(vals) == 0 else vals


def residual(s: Solution, grid_n: int = GRID_POINTS, rule: QuadRule | None = None) -> float:
    """Max over a uniform grid of ``|y - f - integral_0^z k(z, x) y(x) dx|``."""
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    rule = rule or gauss_legendre()
    z = grid(grid_n)
    xs = z[:, None] * rule.nodes[None, :]
    integral = z * ((s.problem.kernel(z[:, None], xs) * evaluate(s, xs)) @ rule.weights)
    r = evaluate(s, z) - s.problem.f_values(z) - integral
    return float(np.max(np.abs(r)))


def error_bound(s: Solution, grid_n: int = GRID_POINTS) -> float:
    """Heuristic ``M / m!`` with ``M = max |y_m(z) * y(z)|``, ``y`` taken as ``y_m``."""
    y = evaluate(s, grid(grid_n))
    return float(np.max(np.abs(y * y))) / math.factorial(s.problem.order)


def max_error(s: Solution, grid_n: int = GRID_POINTS) -> float:
    z = grid(grid_n)
    return float(np.max(np.abs(evaluate(s, z) - s.problem.exact_values(z))))


# ------------------------------------------------------------------ oracle

@dataclass(frozen=True)
class OracleSolution:
    zeta: np.ndarray
    y: np.ndarray

    def __call__(self, x):
        return np.interp(x, self.zeta, self.y)


def oracle_solve(p: VolterraProblem, steps: int = ORACLE_STEPS) -> OracleSolution:
    """Product trapezoidal rule on a uniform grid, second order in ``1/steps``."""
    if steps < 8:
        raise ValueError("oracle needs at least 8 steps")
    h = 1.0 / steps
    z = np.linspace(0.0, 1.0, steps + 1)
    fz = p.f_values(z)
    y = np.empty(steps + 1)
    y[0] = fz[0]
    for n in range(1, steps + 1):
        k = p.kernel(z[n], z[: n + 1])
        denom = 1.0 - 0.5 * h * k[n]
        if abs(denom) < 1e-12:
            raise OracleError(f"vanishing denominator at z={z[n]:.6g}; use more steps")
        acc = 0.5 * k[0] * y[0] + k[1:n] @ y[1:n]
        y[n] = (fz[n] + h * acc) / denom
    return OracleSolution(z, y)


# ------------------------------------------------------------------ convergence

@dataclass(frozen=True)
class ConvergenceRow:
    order: int
    max_abs_err: float | None
    solve_time_ms: float
    error: str | None = None


def convergence_study(p: VolterraProblem, orders, grid_n: int = GRID_POINTS,
                      oracle_steps: int = ORACLE_STEPS, workers: int = 1) -> list[ConvergenceRow]:
    """Max grid error per truncation order against the exact or oracle solution."""
    orders = list(orders)
    if not orders or any(m < 1 for m in orders):
        raise ValueError("orders must be a nonempty list of integers >= 1")
    z = grid(grid_n)
    if p.exact is not None:
        reference = p.exact_values(z)
    else:
        reference = oracle_solve(p, oracle_steps)(z)

    def run(m: int) -> ConvergenceRow:
        t0 = time.perf_counter()
        try:
            s = solve(p.with_order(m), diagnostics=False)
            err = float(np.max(np.abs(evaluate(s, z) - reference)))
        except VolterraError as exc:
            return ConvergenceRow(m, None, 1e3 * (time.perf_counter() - t0), str(exc))
        return ConvergenceRow(m, err, 1e3 * (time.perf_counter() - t0))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, orders))
    return [run(m) for m in orders]
