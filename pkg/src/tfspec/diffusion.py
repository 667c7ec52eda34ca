r"""Tau-Petrov-Galerkin solver for tempered fractional diffusion, ``1 <= alpha2 < alpha1 < 2``.

With ``beta = (alpha1 - 1) / 2`` the trial functions are

.. math::

    \phi_n = e^{-\lambda x}\,{}_{-1}I_x^{\beta}(L_n + L_{n+1})
           = \tfrac{\Gamma(n+2)}{\Gamma(n+2+\beta)}\,e^{-\lambda x}
             (1+x)^{(1+\alpha_1)/2} J_n^{(1-\alpha_1)/2,\,(1+\alpha_1)/2},

which satisfy the homogeneous left condition. The ``N - 1`` test functions
:math:`\psi_k = e^{\lambda x}\,{}_xI_1^{(1+\alpha_1)/2} L_k` need Jacobi
polynomials with a parameter below -1. The last row of the system imposes
the right condition :math:`D^{\alpha_1-1,\lambda}u(1) = u_b` (tau method).
"""

from __future__ import annotations

import numpy as np

from .problem import ProblemSpec, Regime, SpectralSolution, dense_solve, project_onto_tests
from .quadrature import gauss_jacobi
from .specfun import JacobiParams, gamma_fn, gamma_ratio, jacobi_table

EXTRA_NODES_MATRIX = 32
EXTRA_NODES_RHS = 64


def _check_size(n: int) -> None:
    if n < 2:
        raise ValueError(f"diffusion needs at least two basis functions: {n}")


def _check_orders(alpha1: float, alpha2: float) -> None:
    if not 1.0 <= alpha2 <= alpha1 < 2.0:
        raise ValueError(f"diffusion orders need 1 <= alpha2 <= alpha1 < 2: ({alpha1}, {alpha2})")


def trial_scale(n: int, s: float) -> np.ndarray:
    """``Γ(j+2)/Γ(j+2+s)`` for ``j < n``."""
    return np.array([gamma_ratio(j + 2.0, j + 2.0 + s) for j in range(n)])


def test_scale(n: int, s: float) -> np.ndarray:
    """``Γ(k+1)/Γ(k+1+s)`` for ``k < n``."""
    return np.array([gamma_ratio(k + 1.0, k + 1.0 + s) for k in range(n)])


test_scale.__test__ = False  # keep pytest from collecting it


def assemble_b1(n: int) -> np.ndarray:
    r"""Leading ``(n-1) x n`` block :math:`\int (L_j + L_{j+1}) L_k`.

    Lower bidiagonal: ``2/(2k+1)`` at ``[k, k]`` and ``[k, k-1]``.
    """
    _check_size(n)
    g = 2.0 / (2.0 * np.arange(n - 1) + 1.0)
    out = np.zeros((n - 1, n))
    k = np.arange(n - 1)
    out[k, k] = g
    out[k[1:], k[1:] - 1] = g[1:]
    return out


def assemble_b2(n: int, alpha1: float, alpha2: float) -> np.ndarray:
    r"""Lower-order ``(n-1) x n`` block for test ``k`` (rows) and trial ``j`` (columns).

    With :math:`\mu = (\alpha_1-\alpha_2)/2`,

    .. math::

        B_2[k,j] = \int_{-1}^1 {}_{-1}I_x^{\mu}(L_j + L_{j+1})\;{}_xI_1^{\mu} L_k\,dx
        = \frac{\Gamma(j+2)}{\Gamma(j+2+\mu)}\frac{\Gamma(k+1)}{\Gamma(k+1+\mu)}
          \int_{-1}^1 (1-x)^{\mu}(1+x)^{\mu+1} J_j^{-\mu,\mu+1} J_k^{\mu,-\mu}\,dx.
    """
    _check_size(n)
    _check_orders(alpha1, alpha2)
    mu = 0.5 * (alpha1 - alpha2)
    rule = gauss_jacobi(n + EXTRA_NODES_MATRIX, mu, mu + 1.0)
    test = jacobi_table(n - 2, JacobiParams(mu, -mu), rule.nodes)
    trial = jacobi_table(n - 1, JacobiParams(-mu, mu + 1.0), rule.nodes)
    ck = test_scale(n - 1, mu)
    cj = trial_scale(n, mu)
    return ck[:, None] * ((test * rule.weights) @ trial.T) * cj[None, :]


def assemble_boundary_row(n: int, alpha1: float) -> np.ndarray:
    r"""Row imposing the right boundary condition on the trial coefficients.

    Entry ``j`` is :math:`(j+1)\Gamma(j+1+\beta) / (\Gamma(j+2-\beta)\Gamma(\beta+1))`
    with ``beta = (alpha1 - 1)/2``; the matching right-hand side is
    :math:`2^{(\alpha_1-3)/2} e^{\lambda} u_b`.
    """
    _check_size(n)
    if not 1.0 <= alpha1 < 2.0:
        raise ValueError(f"diffusion order must lie in [1, 2): {alpha1}")
    beta = 0.5 * (alpha1 - 1.0)
    g = gamma_fn(beta + 1.0)
    return np.array([(j + 1.0) * gamma_ratio(j + 1.0 + beta, j + 2.0 - beta) / g for j in range(n)])


def boundary_rhs(alpha1: float, lam: float, ub: float) -> float:
    return 2.0 ** (0.5 * (alpha1 - 3.0)) * np.exp(lam) * ub


def assemble_diffusion_rhs(problem: ProblemSpec, n: int) -> np.ndarray:
    """Galerkin moments against the ``n - 1`` tests followed by the boundary datum."""
    _check_size(n)
    s = 0.5 * (problem.alpha1 + 1.0)
    moments = project_onto_tests(
        problem.pieces,
        n - 1,
        s,
        JacobiParams(s, -s),
        test_scale(n - 1, s),
        problem.lam,
        n + EXTRA_NODES_RHS,
    )
    return np.append(moments, boundary_rhs(problem.alpha1, problem.lam, problem.ub))


def diffusion_system(problem: ProblemSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    if problem.regime is not Regime.DIFFUSION:
        raise ValueError("problem is not a diffusion problem")
    a1, a2 = problem.alpha1, problem.alpha2
    galerkin = assemble_b1(n) + problem.d * assemble_b2(n, a1, a2)
    matrix = np.vstack([galerkin, assemble_boundary_row(n, a1)])
    return matrix, assemble_diffusion_rhs(problem, n)


def solve_diffusion(problem: ProblemSpec, n: int) -> SpectralSolution:
    """Solve the square ``n x n`` tau system for the trial coefficients.

    :raises SingularMatrixError: if the system is numerically singular.
    """
    matrix, rhs = diffusion_system(problem, n)
    coeffs, residual, condition = dense_solve(matrix, rhs)
    return SpectralSolution(coeffs, problem.alpha1, problem.lam, Regime.DIFFUSION, residual, condition)


def evaluate_diffusion(solution: SpectralSolution, xs) -> np.ndarray:
    """``u_N(x)`` at arbitrary points of [-1, 1]."""
    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    n = len(solution)
    beta = 0.5 * (solution.alpha1 - 1.0)
    s = 0.5 * (1.0 + solution.alpha1)
    table = jacobi_table(n - 1, JacobiParams(1.0 - s, s), x)
    series = (solution.coeffs * trial_scale(n, beta)) @ table
    return np.exp(-solution.lam * x) * (1.0 + x) ** s * series


def evaluate_boundary_derivative(solution: SpectralSolution, xs) -> np.ndarray:
    r""":math:`D^{\alpha_1-1,\lambda}u_N` in closed form.

    Each trial function maps to
    :math:`e^{-\lambda x}\tfrac{\Gamma(n+2)}{\Gamma(n+2-\beta)}(1+x)^{1-\beta}J_n^{\beta,1-\beta}`.
    """
    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    n = len(solution)
    beta = 0.5 * (solution.alpha1 - 1.0)
    scale = np.array([gamma_ratio(j + 2.0, j + 2.0 - beta) for j in range(n)])
    table = jacobi_table(n - 1, JacobiParams(beta, 1.0 - beta), x)
    return np.exp(-solution.lam * x) * (1.0 + x) ** (1.0 - beta) * ((solution.coeffs * scale) @ table)
