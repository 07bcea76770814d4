import math
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bernvolterra.errors import QuadratureError
from bernvolterra.poly import Poly
from bernvolterra.quadrature import gauss_legendre, integrate, integrate_scaled


def test_small_rules():
    r1 = gauss_legendre(1)
    assert r1.nodes.tolist() == [0.5] and r1.weights.tolist() == [1.0]
    r2 = gauss_legendre(2)
    d = 1 / (2 * math.sqrt(3))
    assert r2.nodes == pytest.approx([0.5 - d, 0.5 + d], abs=1e-15)
    assert r2.weights == pytest.approx([0.5, 0.5], abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 64, 128, 256])
def test_rule_invariants(n):
    r = gauss_legendre(n)
    assert abs(r.weights.sum() - 1) < 1e-14
    assert np.all(np.diff(r.nodes) > 0) and np.all(r.weights > 0)
    assert np.max(np.abs(r.nodes + r.nodes[::-1] - 1)) < 1e-14
    assert np.max(np.abs(r.weights - r.weights[::-1])) < 1e-14
    x, w = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(r.nodes - (x + 1) / 2)) < 1e-14
    assert np.max(np.abs(r.weights - w / 2)) < 1e-14


def test_bounds():
    with pytest.raises(ValueError):
        gauss_legendre(0)
    with pytest.raises(ValueError):
        gauss_legendre(257)


def test_integrate_examples():
    assert integrate(lambda x: 1.0, gauss_legendre(3)) == pytest.approx(1.0, abs=1e-15)
    assert abs(integrate(lambda x: x ** 9, gauss_legendre(5)) - 0.1) < 1e-15
    assert abs(integrate(np.exp, gauss_legendre(20)) - (math.e - 1)) < 1e-13
    assert integrate(lambda x: 6 * x + 3 * x ** 2, gauss_legendre(5)) == pytest.approx(4, abs=1e-14)


def test_integrate_scaled_examples():
    assert integrate_scaled(np.exp, 0.4, 0.4) == 0.0
    assert integrate_scaled(lambda x: 1.0, 0, 0.3) == pytest.approx(0.3, abs=1e-15)
    assert integrate_scaled(lambda x: x, 0, 0.5, gauss_legendre(2)) == pytest.approx(0.125, abs=1e-16)


def test_nonfinite_integrand_reports_node():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: 1 / (x - x[0]), gauss_legendre(4))
    assert info.value.node == pytest.approx(gauss_legendre(4).nodes[0])


@settings(max_examples=50)
@given(st.integers(1, 12), st.data())
def test_exactness(n, data):
    deg = data.draw(st.integers(0, 2 * n - 1))
    coeffs = data.draw(st.lists(st.fractions(-5, 5, max_denominator=9), min_size=deg + 1, max_size=deg + 1))
    p = Poly(coeffs)
    exact = p.antiderivative()(1)
    approx = integrate(lambda x: p.to_float()(x) if p.coeffs else 0.0 * x, gauss_legendre(n))
    scale = max(1.0, sum(abs(float(c)) for c in coeffs))
    assert abs(approx - float(exact)) <= 1e-13 * scale
