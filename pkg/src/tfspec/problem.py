"""Problem description, discrete solutions and the pieces shared by both solvers."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

from .errors import SingularMatrixError, SingularityError
from .functions import FunctionSpec, Piecewise, as_pieces
from .quadrature import mapped_rule
from .specfun import JacobiParams, gamma_fn, jacobi_table

logger = logging.getLogger(__name__)


class Regime(enum.Enum):
    ADVECTION = "advection"
    DIFFUSION = "diffusion"


@dataclass(frozen=True)
class ProblemSpec:
    r"""Two-point problem :math:`D^{\alpha_1,\lambda}u + d\,D^{\alpha_2,\lambda}u = f` on (-1, 1).

    Advection: ``0 <= alpha2 < alpha1 < 1``. Diffusion: ``1 <= alpha2 < alpha1 < 2``
    with the right boundary datum *ub* for the tempered derivative of order
    ``alpha1 - 1``. The right-hand side may be a single :class:`FunctionSpec` or
    a sequence of pieces that are summed.
    """

    alpha1: float
    alpha2: float
    d: float
    lam: float
    rhs: Piecewise
    ub: float = 0.0
    regime: Regime = Regime.ADVECTION

    def __post_init__(self) -> None:
        a1, a2 = self.alpha1, self.alpha2
        if self.regime is Regime.ADVECTION:
            if not 0.0 <= a2 < a1 < 1.0:
                raise ValueError(f"advection needs 0 <= alpha2 < alpha1 < 1: ({a1}, {a2})")
        elif not 1.0 <= a2 < a1 < 2.0:
            raise ValueError(f"diffusion needs 1 <= alpha2 < alpha1 < 2: ({a1}, {a2})")
        if not self.lam > 0:
            raise ValueError(f"tempering parameter must be positive: {self.lam}")

        mu = 0.5 * (a1 - a2)
        if self.regime is Regime.ADVECTION:
            bound = -(gamma_fn(mu + 1.0) ** 2) / 2.0 ** (a1 - a2)
            if not self.d > bound:
                logger.warning("d = %g is below the inf-sup bound %g", self.d, bound)
        else:
            bound = gamma_fn(mu + 1.0) ** 2 / 2.0 ** (a1 - a2 + 1.0)
            if not abs(self.d) < bound:
                logger.warning("|d| = %g exceeds the inf-sup bound %g", abs(self.d), bound)

    @property
    def pieces(self) -> tuple[FunctionSpec, ...]:
        return as_pieces(self.rhs)


@dataclass(frozen=True)
class SpectralSolution:
    """Coefficients of ``u_N`` in the trial basis of *regime*."""

    coeffs: np.ndarray
    alpha1: float
    lam: float
    regime: Regime
    residual: float = field(default=0.0, compare=False)
    condition: float = field(default=float("nan"), compare=False)

    def __len__(self) -> int:
        return self.coeffs.size

    @property
    def left_exponent(self) -> float:
        """Power of ``(1+x)`` carried by every trial function."""
        if self.regime is Regime.ADVECTION:
            return 0.5 * self.alpha1
        return 0.5 * (1.0 + self.alpha1)

    def __call__(self, xs) -> np.ndarray:
        if self.regime is Regime.ADVECTION:
            from .advection import evaluate_advection

            return evaluate_advection(self, xs)
        from .diffusion import evaluate_diffusion

        return evaluate_diffusion(self, xs)

    def as_function(self) -> FunctionSpec:
        return FunctionSpec(self, left_exponent=self.left_exponent)


def project_onto_tests(
    pieces: tuple[FunctionSpec, ...],
    ntest: int,
    nu: float,
    params: JacobiParams,
    scale: np.ndarray,
    lam: float,
    npts: int,
) -> np.ndarray:
    r"""Moments :math:`\int f(x)\,e^{\lambda x} c_k (1-x)^{\nu} J_k^{a,b}(x)\,dx`, ``k < ntest``.

    Each piece is integrated on its own support with a mapped Gauss-Jacobi rule
    whose weight absorbs the piece's endpoint powers and, when the support
    reaches ``x = 1``, the test function's ``(1-x)^nu`` factor as well.
    """
    out = np.zeros(ntest)
    if ntest == 0:
        return out
    for piece in pieces:
        a, b = piece.support
        right = piece.right_exponent + (nu if b == 1.0 else 0.0)
        if not piece.left_exponent > -1.0:
            raise SingularityError(f"right-hand side exponent {piece.left_exponent} <= -1")
        rule = mapped_rule(npts, a, b, piece.left_exponent, right)
        x = rule.nodes
        g = piece.smooth_part(x) * np.exp(lam * x)
        if b != 1.0:
            g = g * (1.0 - x) ** nu
        if not np.all(np.isfinite(g)):
            raise FloatingPointError("right-hand side is not finite at quadrature nodes")
        jk = jacobi_table(ntest - 1, params, x)
        out += jk @ (rule.weights * g)
    return scale * out


def dense_solve(matrix: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, float, float]:
    """LU solve with partial pivoting; returns ``(x, residual, condition)``."""
    condition = float(np.linalg.cond(matrix, 1)) if matrix.size else 1.0
    if not math.isfinite(condition) or condition > 1.0 / np.finfo(float).eps:
        raise SingularMatrixError("spectral system is singular to working precision", condition)
    lu, piv = la.lu_factor(matrix, check_finite=True)
    x = la.lu_solve((lu, piv), rhs)
    residual = float(np.max(np.abs(matrix @ x - rhs))) if rhs.size else 0.0
    return x, residual, condition
