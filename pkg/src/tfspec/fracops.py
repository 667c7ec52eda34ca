r"""Riemann-Liouville and tempered fractional integrals and derivatives.

Two independent routes are provided:

* closed forms acting on weighted Jacobi terms
  :math:`c\,(1+x)^\mu (1-x)^\nu J_n^{a,b}(x)`, from the classical identity

  .. math::

      {}_{-1}I_x^{\alpha}\big((1+x)^{\delta} J_n^{\gamma,\delta}\big)
      = \frac{\Gamma(n+\delta+1)}{\Gamma(n+\delta+\alpha+1)}
        (1+x)^{\delta+\alpha} J_n^{\gamma-\alpha,\delta+\alpha}

  and its mirror image on the right; derivatives are the inverse maps;
* a convolution quadrature that evaluates the defining integrals directly,
  used as an oracle for the closed forms.

The tempered operators are conjugations of these by :math:`e^{\pm\lambda x}`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import PatternError
from .functions import FunctionSpec
from .quadrature import gauss_jacobi
from .specfun import JacobiParams, gamma_fn, gamma_ratio, jacobi_table

PATTERN_TOL = 1.0e-12


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @classmethod
    def of(cls, side: Side | str) -> Side:
        return side if isinstance(side, Side) else cls(side.lower())


@dataclass(frozen=True)
class WeightedJacobiTerm:
    """The function ``coeff * (1+x)**mu * (1-x)**nu * J_n^{params}(x)``.

    *side* records which family of operators the term is meant for: left terms
    carry their endpoint power in *mu*, right terms in *nu*.
    """

    coeff: float
    mu: float
    nu: float
    n: int
    params: JacobiParams
    side: Side = Side.LEFT

    def jacobi_values(self, x) -> np.ndarray:
        """``coeff * J_n(x)`` without the endpoint powers."""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        return self.coeff * jacobi_table(self.n, self.params, x)[self.n]

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = self.jacobi_values(x)
        if self.mu:
            out = out * (1.0 + x) ** self.mu
        if self.nu:
            out = out * (1.0 - x) ** self.nu
        return out


def legendre_term(n: int, side: Side | str = Side.LEFT) -> WeightedJacobiTerm:
    return WeightedJacobiTerm(1.0, 0.0, 0.0, n, JacobiParams(0.0, 0.0), Side.of(side))


def legendre_pair_term(n: int) -> WeightedJacobiTerm:
    """``L_n + L_{n+1} = (1+x) J_n^{0,1}``, vanishing at ``x = -1``."""
    return WeightedJacobiTerm(1.0, 1.0, 0.0, n, JacobiParams(0.0, 1.0), Side.LEFT)


def _check_pattern(t: WeightedJacobiTerm) -> float:
    """Return the exponent playing the role of delta in the identities."""
    if t.side is Side.LEFT:
        delta, other, matching = t.mu, t.nu, t.params.b
    else:
        delta, other, matching = t.nu, t.mu, t.params.a
    if other != 0.0:
        raise PatternError(
            f"{t.side.value} operators need a term without the opposite endpoint "
            f"power, got mu = {t.mu}, nu = {t.nu}"
        )
    if abs(delta - matching) > PATTERN_TOL:
        raise PatternError(
            f"endpoint exponent {delta} does not match the Jacobi parameter "
            f"{matching} of {t.params}"
        )
    return delta


def _shift(t: WeightedJacobiTerm, delta_new: float, coeff: float) -> WeightedJacobiTerm:
    a, b = t.params.a, t.params.b
    delta = t.mu if t.side is Side.LEFT else t.nu
    step = delta_new - delta
    if t.side is Side.LEFT:
        return replace(t, coeff=coeff, mu=delta_new, params=JacobiParams(a - step, b + step))
    return replace(t, coeff=coeff, nu=delta_new, params=JacobiParams(a + step, b - step))


def rl_integral_jacobi(t: WeightedJacobiTerm, alpha: float) -> WeightedJacobiTerm:
    """Closed-form Riemann-Liouville integral of order *alpha* of a Jacobi term."""
    if alpha < 0:
        raise ValueError(f"integral order must be non-negative: {alpha}")
    delta = _check_pattern(t)
    if alpha == 0:
        return t
    if not delta > -1.0:
        raise PatternError(f"identity requires an endpoint exponent > -1: {delta}")
    n = t.n
    coeff = t.coeff * gamma_ratio(n + delta + 1.0, n + delta + alpha + 1.0)
    return _shift(t, delta + alpha, coeff)


def rl_derivative_jacobi(t: WeightedJacobiTerm, alpha: float) -> WeightedJacobiTerm:
    """Closed-form Riemann-Liouville derivative of order *alpha* of a Jacobi term.

    Inverse of :func:`rl_integral_jacobi`; requires the resulting endpoint
    exponent to stay above -1.
    """
    if alpha < 0:
        raise ValueError(f"derivative order must be non-negative: {alpha}")
    top = _check_pattern(t)
    if alpha == 0:
        return t
    delta = top - alpha
    if not delta > -1.0:
        raise PatternError(
            f"derivative of order {alpha} of a term with exponent {top} has no "
            "closed form (resulting exponent must exceed -1)"
        )
    n = t.n
    coeff = t.coeff * gamma_ratio(n + top + 1.0, n + delta + 1.0)
    return _shift(t, delta, coeff)


def rl_apply(t: WeightedJacobiTerm, order: float) -> WeightedJacobiTerm:
    """Integrate for negative *order*, differentiate for positive *order*."""
    if order > 0:
        return rl_derivative_jacobi(t, order)
    return rl_integral_jacobi(t, -order)


# {{{ numeric convolution oracle


def _numeric(
    f: Callable[[np.ndarray], np.ndarray],
    sigma: float,
    alpha: float,
    x: np.ndarray,
    npts: int,
    side: Side,
) -> np.ndarray:
    if not alpha > 0:
        raise ValueError(f"integral order must be positive: {alpha}")
    if side is Side.LEFT:
        rule = gauss_jacobi(npts, alpha - 1.0, sigma)
        h = 0.5 * (x + 1.0)
        s = -1.0 + np.outer(h, rule.nodes + 1.0)
        g = f(s) / (1.0 + s) ** sigma if sigma else f(s)
    else:
        rule = gauss_jacobi(npts, sigma, alpha - 1.0)
        h = 0.5 * (1.0 - x)
        s = x[:, None] + np.outer(h, rule.nodes + 1.0)
        g = f(s) / (1.0 - s) ** sigma if sigma else f(s)
    return h ** (alpha + sigma) * (g @ rule.weights) / gamma_fn(alpha)


def rl_integral_numeric(
    f: FunctionSpec,
    alpha: float,
    x,
    npts: int = 256,
    side: Side | str = Side.LEFT,
):
    r"""Riemann-Liouville integral by Gauss-Jacobi convolution quadrature.

    For the left integral the substitution :math:`s = -1 + (x+1)(t+1)/2` turns
    :math:`(x-s)^{\alpha-1}(1+s)^{\sigma_-}` into the Jacobi weight
    :math:`(1-t)^{\alpha-1}(1+t)^{\sigma_-}`, which is absorbed into the rule.
    The right integral is the mirror image.
    """
    side = Side.of(side)
    if not f.full_support:
        raise ValueError("numeric fractional integrals need a function on all of (-1, 1)")
    sigma = f.left_exponent if side is Side.LEFT else f.right_exponent
    xx = np.asarray(x, dtype=np.float64)
    out = _numeric(f, sigma, alpha, np.atleast_1d(xx), npts, side)
    return float(out[0]) if xx.ndim == 0 else out


def tempered_integral(
    f: FunctionSpec,
    alpha: float,
    lam: float,
    x,
    npts: int = 256,
    side: Side | str = Side.LEFT,
):
    r"""Tempered fractional integral, :math:`e^{\mp\lambda x} I^\alpha(e^{\pm\lambda s} f)`."""
    if lam < 0:
        raise ValueError(f"tempering parameter must be non-negative: {lam}")
    side = Side.of(side)
    sign = 1.0 if side is Side.LEFT else -1.0
    if lam == 0:
        return rl_integral_numeric(f, alpha, x, npts, side)

    tempered = replace(f, eval=lambda s: np.exp(sign * lam * s) * f.eval(s))
    xx = np.asarray(x, dtype=np.float64)
    out = np.exp(-sign * lam * np.atleast_1d(xx)) * rl_integral_numeric(
        tempered, alpha, np.atleast_1d(xx), npts, side
    )
    return float(out[0]) if xx.ndim == 0 else out


# }}}


# {{{ basis functions


def basis_term(
    n: int, alpha: float, side: Side | str = Side.LEFT, pair: bool = False
) -> WeightedJacobiTerm:
    """Jacobi-term form of ``I_side^alpha[L_n]`` (or of ``L_n + L_{n+1}`` if *pair*)."""
    side = Side.of(side)
    if pair:
        if side is not Side.LEFT:
            raise PatternError("Legendre pairs are only used with left operators")
        base = legendre_pair_term(n)
    else:
        base = legendre_term(n, side)
    return rl_integral_jacobi(base, alpha)


def tempered_derivative_on_basis(
    n: int,
    alpha: float,
    lam: float,
    side: Side | str,
    xs,
    order: float | None = None,
    pair: bool = False,
) -> np.ndarray:
    r"""Exact tempered derivative of a solver basis function.

    The operand is :math:`e^{-\lambda x}\,{}_{-1}I_x^{\alpha} P` (left) or
    :math:`e^{\lambda x}\,{}_xI_1^{\alpha} P` (right), with ``P = L_n`` or
    ``P = L_n + L_{n+1}`` when *pair* is set. The derivative of order *order*
    (default *alpha*) is evaluated through the Jacobi identities, so no
    numerical differentiation takes place.
    """
    side = Side.of(side)
    if order is None:
        order = alpha
    term = rl_derivative_jacobi(basis_term(n, alpha, side, pair), order)
    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    sign = -1.0 if side is Side.LEFT else 1.0
    return np.exp(sign * lam * x) * term(x)


# }}}


def power_integral(sigma: float, alpha: float, x) -> np.ndarray:
    r"""Left integral of :math:`(1+s)^\sigma`, i.e. :math:`\frac{\Gamma(\sigma+1)}{\Gamma(\sigma+\alpha+1)}(1+x)^{\sigma+\alpha}`."""
    x = np.asarray(x, dtype=np.float64)
    return gamma_ratio(sigma + 1.0, sigma + alpha + 1.0) * (1.0 + x) ** (sigma + alpha)


__all__ = [
    "FunctionSpec",
    "Side",
    "WeightedJacobiTerm",
    "basis_term",
    "legendre_pair_term",
    "legendre_term",
    "power_integral",
    "rl_apply",
    "rl_derivative_jacobi",
    "rl_integral_jacobi",
    "rl_integral_numeric",
    "tempered_derivative_on_basis",
    "tempered_integral",
]
