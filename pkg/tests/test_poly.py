from fractions import Fraction as Fr
import math

import pytest
from hypothesis import given, strategies as st

from bernvolterra.errors import IncommensurableSurdError, ScalarKindError
from bernvolterra.poly import (Poly, RootPoly, Surd, inner_product, poly_antiderivative, poly_arith,
                               poly_derivative, poly_eval, squarefree_split)

B1 = Poly([Fr(-1, 2), 1])
B2 = Poly([Fr(1, 6), -1, 1])
B3 = Poly([0, Fr(1, 2), Fr(-3, 2), 1])
B4 = Poly([Fr(-1, 30), 0, 1, -2, 1])

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
exact_polys = st.lists(small_fracs, max_size=7).map(Poly)


def test_arith_examples():
    assert poly_arith(B1, Poly([Fr(1, 2)]), "add") == Poly([0, 1])
    assert poly_arith(B2, Poly([1]), "mul") == B2
    assert poly_arith(B1, B1, "mul") == Poly([Fr(1, 4), -1, 1])
    assert poly_arith(B1, B1, "sub").is_zero()
    with pytest.raises(ValueError):
        poly_arith(B1, B1, "div")


def test_kind_mismatch():
    with pytest.raises(ScalarKindError):
        Poly([Fr(1), 0.5])
    with pytest.raises(ScalarKindError):
        B1 + Poly([0.5, 1.0])
    with pytest.raises(ScalarKindError):
        inner_product(B1, Poly([1.0]))
    # ints are neutral
    assert (Poly([1.0, 2]) + Poly([1, 1.5])).coeffs == (2.0, 3.5)


def test_normal_form():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Poly([0, 0]).degree == -1
    assert Poly([0.0]).is_zero()


def test_eval_examples():
    assert poly_eval(B2, 0) == Fr(1, 6)
    assert poly_eval(B1, Fr(1, 2)) == 0
    phi2 = Poly([1, -6, 6])
    assert math.sqrt(5) * poly_eval(phi2, 0.5) == pytest.approx(-math.sqrt(5) / 2, abs=1e-12)
    assert RootPoly(5, phi2)(Fr(1, 2)) == Surd(Fr(-1, 2), 5)


def test_antiderivative_examples():
    assert poly_antiderivative(Poly([1])) == Poly([0, 1])
    assert poly_antiderivative(Poly([0, 2])) == Poly([0, 0, 1])
    phi1 = RootPoly(3, Poly([-1, 2]))
    assert phi1.antiderivative() == RootPoly(3, Poly([0, -1, 1]))


def test_derivative_examples():
    assert poly_derivative(B2) == B1 * 2
    assert poly_derivative(Poly([7])).is_zero()
    assert poly_derivative(B4) == Poly([0, 2, -6, 4]) == B3 * 4


def test_inner_product_examples():
    one = Poly([1])
    assert inner_product(one, one) == 1
    assert inner_product(B1, one) == 0
    phi1 = RootPoly(3, Poly([-1, 2]))
    assert inner_product(phi1, phi1) == 1
    assert inner_product(Poly([1.0, 1.0]), Poly([1.0])) == pytest.approx(1.5)


@given(exact_polys, exact_polys, exact_polys)
def test_distributive(a, b, c):
    assert (a + b) * c == a * c + b * c


@given(exact_polys)
def test_rational_normalization(p):
    for q in (p * p, p + p, p.antiderivative()):
        for c in q.coeffs:
            assert c.denominator > 0 and math.gcd(c.numerator, c.denominator) == 1
        assert not q.coeffs or q.coeffs[-1] != 0


@given(exact_polys)
def test_antiderivative_vanishes_at_zero_and_inverts(p):
    q = p.antiderivative()
    assert q(0) == 0
    assert q.derivative() == p


@given(exact_polys, exact_polys, exact_polys, small_fracs)
def test_inner_product_symmetric_bilinear(p, q, r, s):
    assert inner_product(p, q) == inner_product(q, p)
    assert inner_product(p * s + q, r) == s * inner_product(p, r) + inner_product(q, r)


@given(exact_polys, small_fracs)
def test_shift_matches_pointwise(p, x):
    assert p.shift(1)(x) == p(x + 1)


def test_surd_arithmetic():
    a = Surd.sqrt(12)
    assert a == Surd(2, 3)
    assert Surd.sqrt(Fr(1, 15)) == Surd(Fr(1, 15), 15)
    assert a * a == 12
    assert Surd(1, 3) / Surd(1, 3) == 1
    assert float(Surd(Fr(1, 2), 3)) == pytest.approx(math.sqrt(3) / 2)
    with pytest.raises(IncommensurableSurdError):
        Surd(1, 2) + Surd(1, 3)
    assert Surd(1, 2) + 0 == Surd(1, 2)
    assert str(Surd(Fr(-3, 2), 5)) == "-3*sqrt(5)/2"


def test_squarefree_split():
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(9) == (3, 1)
    assert squarefree_split(19) == (1, 19)


def test_rootpoly_text():
    assert RootPoly(9, Poly([1, -20, 90, -140, 70])).to_text() == "3*(1 - 20*x + 90*x^2 - 140*x^3 + 70*x^4)"
    assert RootPoly(1, Poly([1])).to_text() == "1"
