from fractions import Fraction as Fr

import pytest

from bernvolterra.bernoulli import bernoulli_numbers, bernoulli_poly, bernoulli_table
from bernvolterra.poly import Poly, inner_product

MAX_N = 16


def test_numbers():
    assert bernoulli_numbers(4) == [1, Fr(-1, 2), Fr(1, 6), 0, Fr(-1, 30)]
    assert bernoulli_numbers(0) == [1]
    assert bernoulli_numbers(6)[-1] == Fr(1, 42)
    with pytest.raises(ValueError):
        bernoulli_numbers(-1)


def test_polys_match_closed_forms():
    assert bernoulli_poly(0) == Poly([1])
    assert bernoulli_poly(3) == Poly([0, Fr(1, 2), Fr(-3, 2), 1])
    assert bernoulli_poly(5) == Poly([0, Fr(-1, 6), 0, Fr(5, 3), Fr(-5, 2), 1])
    # 15 * B_4(0) = -1/2 for the x^2 term; a -1/3 there breaks B_6' = 6 B_5
    assert bernoulli_poly(6) == Poly([Fr(1, 42), 0, Fr(-1, 2), 0, Fr(5, 2), -3, 1])
    misprint = Poly([Fr(1, 42), 0, Fr(-1, 3), 0, Fr(5, 2), -3, 1])
    assert misprint.derivative() != bernoulli_poly(5) * 6


def test_table_invariants():
    t = bernoulli_table(MAX_N)
    assert t.max_degree == MAX_N
    assert t.numbers[0] == 1
    assert all(t.numbers[j] == 0 for j in range(3, MAX_N + 1, 2))
    for n, p in enumerate(t.polys):
        assert p.degree == n and p.leading() == 1


@pytest.mark.parametrize("n", range(1, MAX_N + 1))
def test_classical_identities(n):
    b = bernoulli_poly(n)
    assert b.derivative() == bernoulli_poly(n - 1) * n
    assert inner_product(b, Poly([1])) == 0
    assert b.antiderivative()(1) == 0
    assert b.shift(1) - b == Poly.monomial(n - 1, n)


def test_generating_function_crosscheck():
    # t e^{xt}/(e^t - 1) = sum B_n(x) t^n / n!, checked in floats at small t
    import math
    t, x = 0.3, 0.7
    series = sum(float(bernoulli_poly(n)(Fr(7, 10))) * t ** n / math.factorial(n) for n in range(20))
    assert series == pytest.approx(t * math.exp(x * t) / (math.exp(t) - 1), rel=1e-14)
