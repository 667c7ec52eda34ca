r"""Petrov-Galerkin solver for tempered fractional advection, ``0 <= alpha2 < alpha1 < 1``.

With ``s = alpha1 / 2`` the trial and test functions are

.. math::

    \phi_n = e^{-\lambda x}\,{}_{-1}I_x^{s} L_n
           = \tfrac{\Gamma(n+1)}{\Gamma(n+1+s)}\,e^{-\lambda x}(1+x)^{s} J_n^{-s,s},
    \qquad
    \psi_k = e^{\lambda x}\,{}_xI_1^{s} L_k
           = \tfrac{\Gamma(k+1)}{\Gamma(k+1+s)}\,e^{\lambda x}(1-x)^{s} J_k^{s,-s}.

The exponentials cancel in the bilinear form, which splits the fractional
order evenly between trial and test side; the leading block is then the
Legendre mass matrix and the lower-order block a Jacobi-weighted Gram matrix.
"""

from __future__ import annotations

import numpy as np

from .problem import ProblemSpec, Regime, SpectralSolution, dense_solve, project_onto_tests
from .quadrature import gauss_jacobi
from .specfun import JacobiParams, gamma_ratio, jacobi_table

EXTRA_NODES_MATRIX = 32
EXTRA_NODES_RHS = 64


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError(f"number of basis functions must be positive: {n}")


def _check_orders(alpha1: float, alpha2: float) -> None:
    # alpha1 == alpha2 is accepted here: the second block then equals the first
    if not 0.0 <= alpha2 <= alpha1 < 1.0:
        raise ValueError(f"advection orders need 0 <= alpha2 <= alpha1 < 1: ({alpha1}, {alpha2})")


def basis_scale(n: int, s: float) -> np.ndarray:
    """``Γ(k+1)/Γ(k+1+s)`` for ``k < n``."""
    return np.array([gamma_ratio(k + 1.0, k + 1.0 + s) for k in range(n)])


def assemble_a1(n: int) -> np.ndarray:
    """Leading block ``diag(2 / (2k + 1))``."""
    _check_size(n)
    return np.diag(2.0 / (2.0 * np.arange(n) + 1.0))


def assemble_a2(n: int, alpha1: float, alpha2: float) -> np.ndarray:
    r"""Lower-order block; entry ``[k, n]`` pairs test ``k`` with trial ``n``.

    With :math:`\mu = (\alpha_1-\alpha_2)/2`,

    .. math::

        A_2[k,n] = c_k c_n \int_{-1}^1 (1-x^2)^{\mu} J_k^{\mu,-\mu} J_n^{-\mu,\mu}\,dx,
        \qquad c_j = \frac{\Gamma(j+1)}{\Gamma(j+1+\mu)},

    computed with an ``(n + 32)``-point Gauss-Jacobi rule, exact for the
    polynomial integrand.
    """
    _check_size(n)
    _check_orders(alpha1, alpha2)
    mu = 0.5 * (alpha1 - alpha2)
    rule = gauss_jacobi(n + EXTRA_NODES_MATRIX, mu, mu)
    test = jacobi_table(n - 1, JacobiParams(mu, -mu), rule.nodes)
    trial = jacobi_table(n - 1, JacobiParams(-mu, mu), rule.nodes)
    c = basis_scale(n, mu)
    return c[:, None] * ((test * rule.weights) @ trial.T) * c[None, :]


def assemble_advection_rhs(problem: ProblemSpec, n: int) -> np.ndarray:
    r""":math:`f_k = \int_{-1}^1 f\,\psi_k\,dx` for ``k < n``."""
    _check_size(n)
    s = 0.5 * problem.alpha1
    return project_onto_tests(
        problem.pieces,
        n,
        s,
        JacobiParams(s, -s),
        basis_scale(n, s),
        problem.lam,
        n + EXTRA_NODES_RHS,
    )


def advection_system(problem: ProblemSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    if problem.regime is not Regime.ADVECTION:
        raise ValueError("problem is not an advection problem")
    matrix = assemble_a1(n) + problem.d * assemble_a2(n, problem.alpha1, problem.alpha2)
    return matrix, assemble_advection_rhs(problem, n)


def solve_advection(problem: ProblemSpec, n: int) -> SpectralSolution:
    """Solve the ``n x n`` Petrov-Galerkin system for the trial coefficients.

    :raises SingularMatrixError: if the system is numerically singular.
    """
    matrix, rhs = advection_system(problem, n)
    coeffs, residual, condition = dense_solve(matrix, rhs)
    return SpectralSolution(coeffs, problem.alpha1, problem.lam, Regime.ADVECTION, residual, condition)


def evaluate_advection(solution: SpectralSolution, xs) -> np.ndarray:
    """``u_N(x)`` at arbitrary points of [-1, 1]."""
    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    n = len(solution)
    s = 0.5 * solution.alpha1
    table = jacobi_table(n - 1, JacobiParams(-s, s), x)
    series = (solution.coeffs * basis_scale(n, s)) @ table
    return np.exp(-solution.lam * x) * (1.0 + x) ** s * series
