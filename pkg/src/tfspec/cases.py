r"""Built-in benchmark problems with closed-form data.

Every advection example has the form :math:`u = e^{-\lambda x} v` with *v* a
finite sum of truncated powers :math:`c\,(x-x_0)_+^{p}`, ``x_0 in {-1, 0}``.
Riemann-Liouville operators act on such terms in closed form,

.. math::

    {}_{-1}D_x^{r}\,(x-x_0)_+^{p} = \frac{\Gamma(p+1)}{\Gamma(p+1-r)}(x-x_0)_+^{p-r},

for either sign of *r*, and the tempered derivative of *u* is
:math:`e^{-\lambda x} D^r v`. The right-hand sides are therefore derived from
the exact solutions rather than typed in by hand. The diffusion examples use
Mittag-Leffler series, on which the same rule acts term by term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .functions import FunctionSpec, Piecewise
from .problem import ProblemSpec, Regime
from .specfun import mittag_leffler, rgamma


class CaseId(str, enum.Enum):
    ADV_JUMP = "adv_jump"
    ADV_H3 = "adv_h3"
    ADV_SINGULAR_RHS = "adv_singular_rhs"
    ADV_DTERM = "adv_dterm"
    DIFF_ML_POLY = "diff_ml_poly"
    DIFF_ML_EXP = "diff_ml_exp"


@dataclass(frozen=True)
class PowerTerm:
    """``coeff * (x - origin)_+ ** power`` with ``origin`` in ``{-1, 0}``."""

    coeff: float
    origin: float
    power: float

    def rl(self, order: float) -> PowerTerm:
        """Left Riemann-Liouville derivative (``order > 0``) or integral (``order < 0``).

        Both are taken from -1; for ``origin = 0`` the term vanishes on
        ``(-1, 0)`` so the lower limit makes no difference.
        """
        p = self.power
        return PowerTerm(self.coeff * math.gamma(p + 1.0) * rgamma(p + 1.0 - order), self.origin, p - order)

    def tempered(self, lam: float) -> FunctionSpec:
        """``e^{-lam x}`` times the term, as a piece supported on ``(origin, 1)``."""
        c, x0, p = self.coeff, self.origin, self.power
        return FunctionSpec(
            lambda x: c * np.exp(-lam * x) * (x - x0) ** p,
            left_exponent=p,
            support=(x0, 1.0),
        )


def _pieces(terms: list[PowerTerm], lam: float) -> tuple[FunctionSpec, ...]:
    return tuple(t.tempered(lam) for t in terms if t.coeff != 0.0)


def _power_rhs(terms: list[PowerTerm], a1: float, a2: float, d: float, lam: float):
    lead = [t.rl(a1) for t in terms]
    low = [PowerTerm(d * u.coeff, u.origin, u.power) for u in (t.rl(a2) for t in terms)] if d else []
    return _pieces(lead + low, lam)


Builder = Callable[[float, float, float, float], Piecewise]


@dataclass(frozen=True)
class ExampleCase:
    """A benchmark problem family indexed by ``(alpha1, alpha2, d, lambda)``.

    *exact* is ``None`` when no closed-form solution exists; the harness then
    compares against a fine-resolution reference solve.
    """

    id: CaseId
    regime: Regime
    rhs_builder: Builder
    exact: Optional[Builder] = None
    ub_builder: Optional[Callable[[float, float, float, float], float]] = None
    expected_rate: Optional[float] = None
    defaults: dict = field(default_factory=dict)
    description: str = ""

    def problem(self, alpha1: float, alpha2: float, d: float, lam: float) -> ProblemSpec:
        ub = self.ub_builder(alpha1, alpha2, d, lam) if self.ub_builder else 0.0
        rhs = self.rhs_builder(alpha1, alpha2, d, lam)
        return ProblemSpec(alpha1, alpha2, d, lam, rhs, ub=ub, regime=self.regime)

    def exact_solution(self, alpha1: float, alpha2: float, d: float, lam: float) -> Piecewise | None:
        return None if self.exact is None else self.exact(alpha1, alpha2, d, lam)


# {{{ advection


def _jump_terms(a1: float, degree: int) -> list[PowerTerm]:
    """``I^{a1/2} v`` where ``D^degree v = sign(x)`` and *v* vanishes at -1."""
    c = 1.0 / math.gamma(degree + 1.0)
    v = [PowerTerm(-c, -1.0, float(degree)), PowerTerm(2.0 * c, 0.0, float(degree))]
    return [t.rl(-0.5 * a1) for t in v]


def jump_case(degree: int) -> ExampleCase:
    cid = CaseId.ADV_JUMP if degree == 0 else CaseId.ADV_H3
    return ExampleCase(
        id=cid,
        regime=Regime.ADVECTION,
        rhs_builder=lambda a1, a2, d, lam: _power_rhs(_jump_terms(a1, degree), a1, a2, d, lam),
        exact=lambda a1, a2, d, lam: _pieces(_jump_terms(a1, degree), lam),
        expected_rate=0.5 if degree == 0 else 3.0,
        defaults={"alpha2": 0.0, "d": 0.0},
        description=f"e^(-x) I^(a1/2) v with D^{degree} v a unit jump at 0",
    )


def singular_rhs_case(shift: float = 0.3) -> ExampleCase:
    def rhs(a1, a2, d, lam):
        e = -0.5 * a1 - shift
        return FunctionSpec(lambda x: (1.0 + x) ** e, left_exponent=e)

    return ExampleCase(
        id=CaseId.ADV_SINGULAR_RHS,
        regime=Regime.ADVECTION,
        rhs_builder=rhs,
        defaults={"alpha2": 0.0, "d": 0.0},
        description=f"f = (1+x)^(-a1/2-{shift}), reference solution",
    )


def dterm_case(m: int = 3, gamma: float = 0.3) -> ExampleCase:
    def terms(a1):
        return [PowerTerm(1.0, -1.0, m + 0.5 * a1 - gamma)]

    return ExampleCase(
        id=CaseId.ADV_DTERM,
        regime=Regime.ADVECTION,
        rhs_builder=lambda a1, a2, d, lam: _power_rhs(terms(a1), a1, a2, d, lam),
        exact=lambda a1, a2, d, lam: _pieces(terms(a1), lam),
        expected_rate=3.0 if m >= 3 else 0.5,
        defaults={"alpha2": 0.0, "d": -500.0 if m >= 3 else 5.0, "m": m, "gamma": gamma},
        description=f"e^(-x) (1+x)^({m}+a1/2-{gamma})",
    )


# }}}


# {{{ diffusion


def _ml_piece(lam: float, coeff: float, shift: float, g: float, b: float) -> FunctionSpec:
    """``coeff e^{-lam x} (1+x)^shift E_{g,b}((1+x)^g)``, exponent declared at -1."""
    return FunctionSpec(
        lambda x: coeff * np.exp(-lam * x) * (1.0 + x) ** shift * mittag_leffler(g, b, (1.0 + x) ** g),
        left_exponent=shift if rgamma(b) != 0.0 else shift + g,
    )


def defaults_beta(kind: str) -> str:
    return "4" if kind == "poly" else "(a1+1)/2+1"


def mittag_leffler_case(kind: str) -> ExampleCase:
    """``u = e^{-x} (1+x)^{b-1} E_{g,b}((1+x)^g)`` with ``g = 1``.

    ``kind = "poly"`` uses ``b = 4``; ``kind = "exp"`` uses ``b = (a1+1)/2 + 1``.
    """
    g = 1.0
    if kind == "poly":
        cid, rate, defaults = CaseId.DIFF_ML_POLY, 3.0, {"alpha2": 1.0, "d": -1.0}

        def beta(a1):
            return 4.0
    elif kind == "exp":
        cid, rate, defaults = CaseId.DIFF_ML_EXP, None, {"alpha2": 1.0, "d": 100.0}

        def beta(a1):
            return 0.5 * (a1 + 1.0) + 1.0
    else:
        raise ValueError(f"unknown Mittag-Leffler case kind: {kind!r}")

    def exact(a1, a2, d, lam):
        b = beta(a1)
        return _ml_piece(lam, 1.0, b - 1.0, g, b)

    def rhs(a1, a2, d, lam):
        b = beta(a1)
        pieces = [_ml_piece(lam, 1.0, b - 1.0 - a1, g, b - a1)]
        if d:
            pieces.append(_ml_piece(lam, d, b - 1.0 - a2, g, b - a2))
        return tuple(pieces)

    def ub(a1, a2, d, lam):
        b = beta(a1)
        return math.exp(-lam) * 2.0 ** (b - a1) * mittag_leffler(g, b - a1 + 1.0, 2.0**g)

    return ExampleCase(
        id=cid,
        regime=Regime.DIFFUSION,
        rhs_builder=rhs,
        exact=exact,
        ub_builder=ub,
        expected_rate=rate,
        defaults={**defaults, "beta": defaults_beta(kind), "gamma": g},
        description="e^(-x) (1+x)^(b-1) E_(1,b)(1+x), b = " + defaults_beta(kind),
    )


# }}}


def get_case(case_id: CaseId | str, **kwargs) -> ExampleCase:
    """Look up a case by id; *kwargs* tune ``adv_dterm`` (``m``, ``gamma``)."""
    cid = CaseId(case_id)
    if cid is CaseId.ADV_JUMP:
        return jump_case(0)
    if cid is CaseId.ADV_H3:
        return jump_case(3)
    if cid is CaseId.ADV_SINGULAR_RHS:
        return singular_rhs_case()
    if cid is CaseId.ADV_DTERM:
        return dterm_case(**kwargs)
    if cid is CaseId.DIFF_ML_POLY:
        return mittag_leffler_case("poly")
    return mittag_leffler_case("exp")

