"""Spectral solver for linear Volterra integral equations of the second kind on [0, 1]
using an orthonormal basis derived from Bernoulli polynomials."""

__version__ = "0.1.0"

from .basis import BasisSet, gram_schmidt_basis, shifted_legendre_oracle
from .bernoulli import bernoulli_numbers, bernoulli_poly
from .opmatrix import (Constant, DifferencePower, ExpressionKernel, OpMatrix, phi_for_kernel,
                       theta_by_projection, theta_closed_form)
from .poly import Poly, RootPoly, Surd, inner_product
from .solver import VolterraProblem, convergence_study, oracle_solve, project, solve

__all__ = [
    "BasisSet", "Constant", "DifferencePower", "ExpressionKernel", "OpMatrix", "Poly",
    "RootPoly", "Surd", "VolterraProblem", "bernoulli_numbers", "bernoulli_poly",
    "convergence_study", "gram_schmidt_basis", "inner_product", "oracle_solve",
    "phi_for_kernel", "project", "shifted_legendre_oracle", "solve", "theta_by_projection",
    "theta_closed_form",
]
