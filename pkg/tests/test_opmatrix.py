import math
from fractions import Fraction as Fr

import numpy as np
import pytest

from bernvolterra.basis import BasisSet, gram_schmidt_basis
from bernvolterra.errors import SpecificationError
from bernvolterra.exprparse import parse
from bernvolterra.opmatrix import (Constant, DifferencePower, ExpressionKernel, kernel_from_ast,
                                   phi_for_kernel, theta_by_projection, theta_closed_form)
from bernvolterra.poly import Surd
from bernvolterra.quadrature import gauss_legendre, integrate_scaled

RNG = np.random.default_rng(20240601)


def test_closed_form_examples():
    t1 = theta_closed_form(1)
    assert t1.entries == ((Surd(Fr(1, 2)), Surd(Fr(1, 6), 3)), (-Surd(Fr(1, 6), 3), Surd(0)))
    t2 = theta_closed_form(2)
    assert t2[1, 2] == Surd(Fr(1, 30), 15) == 1 / (2 * Surd.sqrt(15))
    assert t2[2, 1] == -t2[1, 2] and t2[2, 2] == 0
    assert theta_closed_form(0).entries == ((Surd(Fr(1, 2)),),)


def test_tridiagonal():
    t = theta_closed_form(9)
    for i in range(10):
        for j in range(10):
            if abs(i - j) > 1:
                assert t[i, j] == 0


def test_projection_entries():
    t = theta_by_projection(gram_schmidt_basis(3))
    assert t[0, 0] == Fr(1, 2)
    assert t[1, 0] == -Surd(Fr(1, 6), 3)


@pytest.mark.parametrize("m", range(10))
def test_cross_construction(m):
    assert theta_closed_form(m) == theta_by_projection(gram_schmidt_basis(m))


def test_action_property():
    m = 9
    b = BasisSet(m)
    theta = theta_closed_form(m).to_array()
    zs = RNG.uniform(0, 1, 20)
    lhs = theta @ b.eval_float(zs)
    for i in range(m):
        prim = gram_schmidt_basis(m).phis[i].antiderivative()
        rhs = np.array([float(prim(Fr(z))) for z in zs])
        assert np.max(np.abs(lhs[i] - rhs)) <= 1e-12


def test_kernel_examples():
    theta6 = theta_closed_form(5).to_array()
    assert np.array_equal(phi_for_kernel(Constant(Fr(-1)), 5).to_array(), -theta6)
    theta10 = theta_closed_form(9).to_array()
    got = phi_for_kernel(DifferencePower(1, Fr(-1)), 9).to_array()
    assert np.max(np.abs(got + theta10 @ theta10)) < 1e-16
    got = phi_for_kernel(DifferencePower(2, Fr(1)), 9).to_array()
    assert np.max(np.abs(got - 2 * theta10 @ theta10 @ theta10)) < 1e-16


def test_exact_power_matches_float():
    for j in (1, 2, 3):
        exact = phi_for_kernel(DifferencePower(j, Fr(1)), 9, exact=True)
        assert exact.exact
        assert np.max(np.abs(exact.to_array() - phi_for_kernel(DifferencePower(j), 9).to_array())) < 1e-15


def _quad_kernel_action(j, i, z, basis):
    return integrate_scaled(lambda x: (z - x) ** j * basis.eval_float(x)[i], 0.0, z, gauss_legendre(64))


@pytest.mark.parametrize("j", [1, 2, 3])
def test_kernel_correctness_by_quadrature(j):
    m = 9
    b = BasisSet(m)
    phi = phi_for_kernel(DifferencePower(j), m).to_array()
    zs = RNG.uniform(0, 1, 20)
    vals = phi @ b.eval_float(zs)
    for i in range(m - j):
        quad = np.array([_quad_kernel_action(j, i, z, b) for z in zs])
        assert np.max(np.abs(vals[i] - quad)) <= 1e-10


def test_expression_kernel_consistency():
    m = 9
    expr = phi_for_kernel(ExpressionKernel(parse("z - x")), m).to_array()
    closed = phi_for_kernel(DifferencePower(1), m).to_array()
    assert np.max(np.abs(expr[: m - 1] - closed[: m - 1])) <= 1e-10


def test_kernel_routing():
    assert kernel_from_ast(parse("-(z - x)")) == DifferencePower(1, Fr(-1))
    assert kernel_from_ast(parse("(z-x)^2")) == DifferencePower(2, Fr(1))
    assert kernel_from_ast(parse("-1")) == Constant(Fr(-1))
    assert isinstance(kernel_from_ast(parse("z*x")), ExpressionKernel)


def test_kernel_spec_errors():
    with pytest.raises(SpecificationError):
        DifferencePower(0)
    with pytest.raises(SpecificationError):
        phi_for_kernel(ExpressionKernel(parse("z*x")), 3, exact=True)


def test_kernel_callables_broadcast():
    z, x = 0.5, np.linspace(0, 0.5, 4)
    assert Constant(2)(z, x).shape == (4,)
    assert np.allclose(DifferencePower(2, 3)(z, x), 3 * (z - x) ** 2)
    assert ExpressionKernel(parse("1"))(z, x).shape == (4,)
