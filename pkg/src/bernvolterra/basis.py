"""Orthonormal polynomial basis on [0, 1] built from Bernoulli polynomials.

Gram-Schmidt over ``B_0, ..., B_m`` in exact arithmetic gives the orthonormal
shifted Legendre family ``sqrt(2k+1) * P_k(2x - 1)``.  The exact polynomials are
used for construction and exact checks.  Float evaluation goes through the
three-term Legendre recurrence, which is the same function and does not suffer
the cancellation of the monomial form at higher degree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .bernoulli import bernoulli_poly
from .poly import Poly, RootPoly, Surd, inner_product

SIGN_CONVENTION = "positive leading coefficient"


def _normalize(v: Poly) -> RootPoly:
    norm_sq = inner_product(v, v)
    # v / sqrt(a/b) = v * sqrt(a*b) / a
    a, b = norm_sq.numerator, norm_sq.denominator
    phi = RootPoly(a * b, v / a)
    if phi.poly.leading() < 0:
        phi = -phi
    return phi


def _moments(u: Poly, size: int) -> list[Fraction]:
    # mu[a] = <x^a, u> for a < size
    return [sum((c / (a + b + 1) for b, c in enumerate(u.coeffs)), Fraction(0)) for a in range(size)]


@lru_cache(maxsize=None)
def _gram_schmidt(m: int) -> tuple[RootPoly, ...]:
    # Modified Gram-Schmidt on unnormalised orthogonal vectors, so every
    # projection stays rational; normalisation happens once at the end.
    # Caching <x^a, u> turns each projection into a dot product.
    ortho: list[Poly] = []
    moments: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for n in range(m + 1):
        v = bernoulli_poly(n)
        for u, mu, nu in zip(ortho, moments, norms):
            ip = sum((c * w for c, w in zip(v.coeffs, mu)), Fraction(0))
            v = v - u * (ip / nu)
        mu = _moments(v, m + 1)
        ortho.append(v)
        moments.append(mu)
        norms.append(sum((c * w for c, w in zip(v.coeffs, mu)), Fraction(0)))
    return tuple(_normalize(v) for v in ortho)


class BasisSet:
    """Orthonormal basis ``phi_0, ..., phi_m`` on [0, 1]."""

    sign_convention = SIGN_CONVENTION

    def __init__(self, order: int):
        if order < 0:
            raise ValueError("basis order must be non-negative")
        self.order = order

    def __len__(self):
        return self.order + 1

    def __repr__(self):
        return f"BasisSet(order={self.order})"

    @cached_property
    def phis(self) -> tuple[RootPoly, ...]:
        return _gram_schmidt(self.order)

    def eval_float(self, x) -> np.ndarray:
        """Values of every basis function at ``x``; shape ``(m+1,) + shape(x)``.

        ``phi_k(x) = sqrt(2k+1) P_k(t)`` with ``t = 2x - 1`` and
        ``(k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}``.
        """
        x = np.asarray(x, dtype=float)
        t = 2.0 * x - 1.0
        out = np.empty((self.order + 1,) + x.shape)
        p_prev = np.ones_like(t)
        out[0] = p_prev
        if self.order >= 1:
            p_cur = t.copy()
            out[1] = p_cur
            for k in range(1, self.order):
                p_prev, p_cur = p_cur, ((2 * k + 1) * t * p_cur - k * p_prev) / (k + 1)
                out[k + 1] = p_cur
        scale = np.sqrt(2.0 * np.arange(self.order + 1) + 1.0)
        return out * scale.reshape((-1,) + (1,) * x.ndim)

    def eval_exact(self, x) -> list[Surd]:
        x = Fraction(x)
        return [phi(x) for phi in self.phis]


def gram_schmidt_basis(m: int) -> BasisSet:
    basis = BasisSet(m)
    basis.phis  # noqa: B018 - force construction
    return basis


@lru_cache(maxsize=None)
def _legendre(k: int) -> Poly:
    if k == 0:
        return Poly([1])
    if k == 1:
        return Poly([0, 1])
    t = Poly([0, 1])
    return (t * _legendre(k - 1) * (2 * k - 1) - _legendre(k - 2) * (k - 1)) / k


def shifted_legendre_oracle(k: int) -> RootPoly:
    """``sqrt(2k+1) * P_k(2x - 1)`` from the exact Legendre recurrence."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return RootPoly(2 * k + 1, _legendre(k).compose(Poly([-1, 2])))


def basis_eval(b: BasisSet, x) -> tuple[list, bool]:
    """Return ``(values, inside)`` where ``inside`` flags ``0 <= x <= 1``.

    Rational ``x`` gives exact :class:`Surd` values; float ``x`` gives floats.
    """
    inside = 0 <= x <= 1
    if isinstance(x, float):
        return list(b.eval_float(x)), inside
    return b.eval_exact(x), inside


def check_orthonormal(b: BasisSet) -> bool:
    phis = b.phis
    for i, p in enumerate(phis):
        for j in range(i, len(phis)):
            if inner_product(p, phis[j]) != (1 if i == j else 0):
                return False
    return True


def check_oracle(b: BasisSet) -> bool:
    return all(phi == shifted_legendre_oracle(k) for k, phi in enumerate(b.phis))


def endpoint_values(k: int) -> tuple[float, float]:
    s = math.sqrt(2 * k + 1)
    return (-1) ** k * s, s
