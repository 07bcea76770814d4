"""Gauss-Legendre rules on [0, 1] and affine images of them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

DEFAULT_NODES = 64
MAX_NODES = 256


@dataclass(frozen=True)
class QuadRule:
    n: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)


def _legendre_and_derivative(n: int, x: float) -> tuple[float, float]:
    p0, p1 = 1.0, x
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def gauss_legendre(n: int = DEFAULT_NODES) -> QuadRule:
    """n-point Gauss-Legendre rule mapped to [0, 1].

    Roots of ``P_n`` by Newton iteration from Chebyshev-like guesses; only the
    positive half is iterated and mirrored, so the rule is exactly symmetric.
    """
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"rule size must be in [1, {MAX_NODES}]")
    xs = np.empty(n)
    ws = np.empty(n)
    for i in range((n + 1) // 2):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p, dp = _legendre_and_derivative(n, x)
            dx = p / dp
            x -= dx
            if abs(dx) <= 1e-15:
                break
        else:
            raise QuadratureError(f"Newton iteration did not converge for n={n}, root {i}")
        p, dp = _legendre_and_derivative(n, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        if 2 * i + 1 == n:
            x = 0.0
        xs[i], xs[n - 1 - i] = -x, x
        ws[i] = ws[n - 1 - i] = w
    nodes = 0.5 * (xs + 1.0)
    # keep the mirror pairs summing to 1 after the affine map
    nodes[n - n // 2:] = 1.0 - nodes[: n // 2][::-1]
    return QuadRule(n, nodes, 0.5 * ws)


def _values(f, x: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        raise QuadratureError("non-finite integrand value", node=float(x[np.argmax(bad)]))
    return vals


def integrate(f, rule: QuadRule | None = None) -> float:
    """``sum w_i f(x_i)`` over [0, 1]; ``f`` must accept a numpy array."""
    rule = rule or gauss_legendre()
    return float(rule.weights @ _values(f, rule.nodes))


def integrate_scaled(f, a: float, b: float, rule: QuadRule | None = None) -> float:
    if b < a:
        raise ValueError("integrate_scaled needs a <= b")
    if a == b:
        return 0.0
    rule = rule or gauss_legendre()
    x = a + (b - a) * rule.nodes
    return float((b - a) * (rule.weights @ _values(f, x)))
