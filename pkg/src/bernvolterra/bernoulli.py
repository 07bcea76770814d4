"""Bernoulli numbers and polynomials in exact rational arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import Poly


@lru_cache(maxsize=None)
def _numbers_upto(n: int) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(1),)
    prev = _numbers_upto(n - 1)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    acc = sum((comb(n + 1, k) * b for k, b in enumerate(prev)), Fraction(0))
    return prev + (-acc / (n + 1),)


def bernoulli_numbers(n: int) -> list[Fraction]:
    """Return ``B_0(0), ..., B_n(0)`` (convention ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_numbers_upto(n))


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """Monic Bernoulli polynomial of degree ``n``.

    >>> bernoulli_poly(2).coeffs
    (Fraction(1, 6), Fraction(-1, 1), Fraction(1, 1))
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    nums = _numbers_upto(n)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = comb(n, j) * nums[j]
    return Poly(coeffs)


@dataclass(frozen=True)
class BernoulliTable:
    numbers: tuple[Fraction, ...]
    polys: tuple[Poly, ...]

    @property
    def max_degree(self) -> int:
        return len(self.numbers) - 1


def bernoulli_table(n: int) -> BernoulliTable:
    return BernoulliTable(tuple(bernoulli_numbers(n)), tuple(bernoulli_poly(k) for k in range(n + 1)))
