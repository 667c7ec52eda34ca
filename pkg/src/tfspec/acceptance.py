"""Acceptance checks shared by the test-suite and ``tfspec verify``.

Each ``criterion_*`` function runs one check at its fixed tolerance and
returns a :class:`CriterionResult`; nothing here is tuned to make a check
pass. Random inputs use fixed seeds so results are reproducible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .advection import assemble_a2, solve_advection
from .cases import get_case
from .convergence import run_case
from .diffusion import solve_diffusion
from .fracops import (
    Side,
    WeightedJacobiTerm,
    basis_term,
    rl_apply,
    rl_derivative_jacobi,
    rl_integral_jacobi,
    rl_integral_numeric,
    tempered_derivative_on_basis,
    tempered_integral,
)
from .functions import FunctionSpec
from .problem import ProblemSpec, Regime
from .quadrature import gauss_jacobi
from .specfun import JacobiParams

SEED = 20240611


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d}: {self.title} :: {self.detail}"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# {{{ 1-4: fractional operators


def _random_term(rng: np.random.Generator) -> WeightedJacobiTerm:
    side = Side.LEFT if rng.random() < 0.5 else Side.RIGHT
    delta = float(rng.uniform(-0.9, 2.0))
    other = float(rng.uniform(-0.9, 2.0))
    n = int(rng.integers(0, 25))
    coeff = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
    if side is Side.LEFT:
        return WeightedJacobiTerm(coeff, delta, 0.0, n, JacobiParams(other, delta), side)
    return WeightedJacobiTerm(coeff, 0.0, delta, n, JacobiParams(delta, other), side)


def criterion_1(count: int = 200, tol: float = 1e-12) -> CriterionResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(count):
        t = _random_term(rng)
        alpha = float(rng.uniform(0.0, 2.0))
        back = rl_derivative_jacobi(rl_integral_jacobi(t, alpha), alpha)
        err = max(
            _rel(back.coeff, t.coeff),
            abs(back.mu - t.mu),
            abs(back.nu - t.nu),
            abs(back.params.a - t.params.a),
            abs(back.params.b - t.params.b),
        )
        if back.n != t.n or back.side is not t.side:
            err = math.inf
        worst = max(worst, err)
    return CriterionResult(1, "derivative of integral is the identity", worst <= tol, f"{count} terms, max rel err {worst:.2e} (tol {tol:g})")


def criterion_2(tol: float = 1e-8) -> CriterionResult:
    xs = np.linspace(-1.0, 1.0, 22)[1:-1]
    worst = 0.0
    cases = 0
    for alpha in (0.3, 0.7, 1.4):
        for n in range(11):
            for side in (Side.LEFT, Side.RIGHT):
                for delta in (0.0, 0.35, -0.4):
                    if side is Side.LEFT:
                        t = WeightedJacobiTerm(1.0, delta, 0.0, n, JacobiParams(-delta, delta), side)
                        spec = FunctionSpec(t, left_exponent=delta)
                    else:
                        t = WeightedJacobiTerm(1.0, 0.0, delta, n, JacobiParams(delta, -delta), side)
                        spec = FunctionSpec(t, right_exponent=delta)
                    closed = rl_integral_jacobi(t, alpha)(xs)
                    numeric = rl_integral_numeric(spec, alpha, xs, npts=256, side=side)
                    scale = float(np.max(np.abs(closed)))
                    worst = max(worst, float(np.max(np.abs(closed - numeric))) / scale)
                    cases += 1
    return CriterionResult(
        2, "closed-form integral matches convolution quadrature", worst <= tol, f"{cases} terms x 20 points, max rel err {worst:.2e} (tol {tol:g})"
    )


def _random_poly(rng: np.random.Generator, degree: int) -> Callable[[np.ndarray], np.ndarray]:
    c = rng.normal(size=degree + 1)
    return lambda x: np.polynomial.legendre.legval(x, c)


def _tempered_smooth(f: FunctionSpec, alpha: float, lam: float, x: np.ndarray, side: Side) -> np.ndarray:
    """Tempered integral with its endpoint factor ``(1 -/+ x)^alpha`` divided out."""
    vals = tempered_integral(f, alpha, lam, x, npts=96, side=side)
    return vals / ((1.0 + x) ** alpha if side is Side.LEFT else (1.0 - x) ** alpha)


def criterion_3(trials: int = 60, tol: float = 1e-8) -> CriterionResult:
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(trials):
        alpha = float(rng.uniform(0.05, 1.95))
        lam = float(rng.choice([0.0, 0.5, 1.0, 2.0]))
        u = FunctionSpec(_random_poly(rng, int(rng.integers(0, 9))))
        v = FunctionSpec(_random_poly(rng, int(rng.integers(0, 9))))
        left_rule = gauss_jacobi(96, 0.0, alpha)
        right_rule = gauss_jacobi(96, alpha, 0.0)
        lhs = left_rule.integrate(_tempered_smooth(u, alpha, lam, left_rule.nodes, Side.LEFT) * v(left_rule.nodes))
        rhs = right_rule.integrate(u(right_rule.nodes) * _tempered_smooth(v, alpha, lam, right_rule.nodes, Side.RIGHT))
        worst = max(worst, abs(lhs - rhs))
    return CriterionResult(3, "left/right tempered integrals are adjoint", worst <= tol, f"{trials} random pairs, max |diff| {worst:.2e} (tol {tol:g})")


def criterion_4(trials: int = 20, tol: float = 1e-8) -> CriterionResult:
    rng = np.random.default_rng(SEED + 4)
    worst = math.inf
    count = 0
    for alpha in (0.1, 0.25, 0.45):
        for lam in (0.0, 1.0):
            cross_rule = gauss_jacobi(96, alpha, alpha)
            norm_rule = gauss_jacobi(96, 0.0, 2.0 * alpha)
            for _ in range(trials):
                f = FunctionSpec(_random_poly(rng, int(rng.integers(0, 11))))
                x = cross_rule.nodes
                cross = cross_rule.integrate(
                    _tempered_smooth(f, alpha, lam, x, Side.LEFT) * _tempered_smooth(f, alpha, lam, x, Side.RIGHT)
                )
                y = norm_rule.nodes
                norm2 = norm_rule.integrate(_tempered_smooth(f, alpha, lam, y, Side.LEFT) ** 2)
                worst = min(worst, cross - math.cos(math.pi * alpha) * norm2)
                count += 1
    return CriterionResult(4, "coercivity of the tempered integral pairing", worst >= -tol, f"{count} samples, min margin {worst:.3e} (tol {tol:g})")


# }}}


# {{{ 5, 11, 12: matrices and quadrature


def criterion_5(tol: float = 1e-12) -> CriterionResult:
    worst = 0.0
    for gap in (0.1, 0.5, 0.9):
        for n in range(1, 33):
            a2 = assemble_a2(n, 0.95, 0.95 - gap)
            signs = (-1.0) ** np.add.outer(np.arange(n), np.arange(n))
            worst = max(worst, float(np.max(np.abs(a2 - signs * a2.T))))
    return CriterionResult(5, "A2[k,n] = (-1)^(k+n) A2[n,k]", worst <= tol, f"N <= 32, max deviation {worst:.2e} (tol {tol:g})")


def _advection_manufactured(rng, n, a1, a2, d, lam):
    coeffs = rng.normal(size=n)
    pieces = []
    for j, c in enumerate(coeffs):
        for order, scale in ((a1, 1.0), (a2, d)):
            if scale == 0.0:
                continue
            t = rl_apply(basis_term(j, 0.5 * a1), order)
            k = scale * c
            pieces.append(
                FunctionSpec(lambda x, t=t, k=k: k * np.exp(-lam * x) * t(x), left_exponent=t.mu)
            )
    return coeffs, ProblemSpec(a1, a2, d, lam, pieces, regime=Regime.ADVECTION)


def _diffusion_manufactured(rng, n, a1, a2, d, lam):
    coeffs = rng.normal(size=n)
    beta = 0.5 * (a1 - 1.0)
    pieces = []
    for j, c in enumerate(coeffs):
        for order, scale in ((a1, 1.0), (a2, d)):
            if scale == 0.0:
                continue
            t = rl_apply(basis_term(j, beta, pair=True), order)
            k = scale * c
            pieces.append(
                FunctionSpec(lambda x, t=t, k=k: k * np.exp(-lam * x) * t(x), left_exponent=t.mu)
            )
    ub = sum(
        c * float(tempered_derivative_on_basis(j, beta, lam, Side.LEFT, [1.0], order=a1 - 1.0, pair=True)[0])
        for j, c in enumerate(coeffs)
    )
    return coeffs, ProblemSpec(a1, a2, d, lam, pieces, ub=ub, regime=Regime.DIFFUSION)


def criterion_11(tol: float = 1e-11) -> CriterionResult:
    rng = np.random.default_rng(SEED + 11)
    worst = 0.0
    runs = 0
    logging.disable(logging.WARNING)
    try:
        for a1, a2, d in ((0.6, 0.2, 2.0), (0.9, 0.0, -0.3), (0.3, 0.1, 0.0)):
            for n in (1, 5, 12):
                coeffs, problem = _advection_manufactured(rng, n, a1, a2, d, 1.0)
                got = solve_advection(problem, n).coeffs
                worst = max(worst, float(np.max(np.abs(got - coeffs))))
                runs += 1
        for a1, a2, d in ((1.5, 1.2, 0.3), (1.8, 1.0, -1.0), (1.3, 1.1, 5.0)):
            for n in (2, 6, 12):
                coeffs, problem = _diffusion_manufactured(rng, n, a1, a2, d, 1.0)
                got = solve_diffusion(problem, n).coeffs
                worst = max(worst, float(np.max(np.abs(got - coeffs))))
                runs += 1
    finally:
        logging.disable(logging.NOTSET)
    return CriterionResult(11, "trial-space solutions are recovered", worst <= tol, f"{runs} solves, max coefficient error {worst:.2e} (tol {tol:g})")


def exact_moment_ratios(kmax: int, a: float, b: float) -> list[Fraction]:
    r"""``m_k / m_0`` for the weight :math:`(1-x)^a(1+x)^b`, exactly.

    Integrating :math:`\frac{d}{dx}[x^k(1-x)^{a+1}(1+x)^{b+1}]` over (-1, 1) gives
    :math:`(k+a+b+2)\,m_{k+1} = k\,m_{k-1} + (b-a)\,m_k`; every float is a dyadic
    rational, so the recurrence runs in exact arithmetic.
    """
    fa, fb = Fraction(a), Fraction(b)
    out = [Fraction(1), (fb - fa) / (fa + fb + 2)]
    for k in range(1, kmax):
        out.append((k * out[k - 1] + (fb - fa) * out[k]) / (k + fa + fb + 2))
    return out[: kmax + 1]


MOMENT_PARAMS = ((0.0, 0.0), (0.3, -0.4), (-0.7, 0.9), (0.5, 0.5), (-0.45, -0.45), (1.2, -0.9), (0.25, 1.25))


def criterion_12(nmax: int = 64, tol: float = 1e-11) -> CriterionResult:
    """Rules with ``n <= nmax`` integrate ``x^k``, ``k < 2n``, exactly.

    Odd moments may cancel to nearly zero, so errors are measured relative to
    ``sqrt(m_{k-1} m_{k+1})`` in that case, the natural size of the integrand.
    """
    worst = 0.0
    from scipy.special import beta as beta_fn

    for a, b in MOMENT_PARAMS:
        ratios = [float(r) for r in exact_moment_ratios(2 * nmax, a, b)]
        m0 = 2.0 ** (a + b + 1.0) * float(beta_fn(a + 1.0, b + 1.0))
        moments = np.array(ratios) * m0
        for n in range(1, nmax + 1):
            rule = gauss_jacobi(n, a, b)
            powers = np.vander(rule.nodes, 2 * n, increasing=True)
            got = rule.weights @ powers
            for k in range(2 * n):
                scale = abs(moments[k])
                if k % 2:
                    scale = max(scale, math.sqrt(abs(moments[k - 1] * moments[k + 1])))
                worst = max(worst, abs(got[k] - moments[k]) / scale)
    return CriterionResult(12, "Gauss-Jacobi rules are exact on monomials", worst <= tol, f"{len(MOMENT_PARAMS)} weights, n <= {nmax}, max rel err {worst:.2e} (tol {tol:g})")


# }}}


# {{{ 6-10: convergence studies

ADV_NS = (8, 16, 32, 64, 128, 256)
# errors reach roundoff near N = 128 for these cases; stop before the floor
FAST_NS = (8, 16, 24, 32, 48, 64)


def _rates(case_id, params, ns, **case_kw):
    case = get_case(case_id, **case_kw)
    logging.disable(logging.WARNING)
    try:
        return [run_case(case, a1, a2, d, 1.0, ns) for a1, a2, d in params]
    finally:
        logging.disable(logging.NOTSET)


def _fmt_rates(reports) -> str:
    return ", ".join(f"a1={r.alpha1:g}/a2={r.alpha2:g}/d={r.d:g}: {r.fitted_rate:.3f}" for r in reports)


def criterion_6(band=(0.40, 0.65)) -> CriterionResult:
    reports = _rates("adv_jump", [(a1, 0.0, 0.0) for a1 in (0.3, 0.6, 0.9)], ADV_NS)
    ok = all(band[0] <= r.fitted_rate <= band[1] for r in reports)
    return CriterionResult(6, "jump example L2 rate in band", ok, f"rates {_fmt_rates(reports)} (band {band})")


def criterion_7(floor: float = 2.7) -> CriterionResult:
    reports = _rates("adv_h3", [(a1, 0.0, 0.0) for a1 in (0.3, 0.6, 0.9)], ADV_NS)
    ok = all(r.fitted_rate >= floor for r in reports)
    return CriterionResult(7, "H^3 example rate", ok, f"rates {_fmt_rates(reports)} (>= {floor})")


def criterion_8(floor: float = 2.7, band=(0.40, 0.65)) -> CriterionResult:
    smooth = _rates("adv_dterm", [(a1, 0.0, d) for a1 in (0.3, 0.6, 0.9) for d in (-500.0, 500.0)], FAST_NS, m=3, gamma=0.3)
    rough = _rates("adv_dterm", [(a1, 0.0, 5.0) for a1 in (0.3, 0.6, 0.9)], ADV_NS, m=0, gamma=0.3)
    ok_smooth = all(r.fitted_rate >= floor for r in smooth)
    ok_rough = all(band[0] <= r.fitted_rate <= band[1] for r in rough)
    detail = f"m=3: {_fmt_rates(smooth)} (>= {floor}); m=0: {_fmt_rates(rough)} (band {band})"
    return CriterionResult(8, "d-term example rates", ok_smooth and ok_rough, detail)


def criterion_9(floor: float = 2.7, spread: float = 0.5) -> CriterionResult:
    pairs = _rates("diff_ml_poly", [(1.5, 1.1, -1.0), (1.8, 1.2, -1.0), (1.99, 1.5, -1.0)], FAST_NS)
    fixed = _rates("diff_ml_poly", [(1.99, a2, -1.0) for a2 in (1.1, 1.5, 1.9)], FAST_NS)
    rates = [r.fitted_rate for r in fixed]
    width = max(rates) - min(rates)
    ok = all(r.fitted_rate >= floor for r in pairs) and width <= spread
    detail = f"{_fmt_rates(pairs)} (>= {floor}); alpha1=1.99 spread {width:.3f} (<= {spread})"
    return CriterionResult(9, "Mittag-Leffler polynomial-type example", ok, detail)


def criterion_10(ratio: float = 1e-4) -> CriterionResult:
    reports = _rates("diff_ml_exp", [(a1, 1.0, 100.0) for a1 in (1.5, 1.8, 1.99)], (24, 48))
    got = [r.error_at(48) / r.error_at(24) for r in reports]
    ok = all(g <= ratio for g in got)
    detail = ", ".join(
        f"a1={r.alpha1:g}: e24={r.error_at(24):.2e} e48={r.error_at(48):.2e} ratio {g:.2e}" for r, g in zip(reports, got)
    )
    return CriterionResult(10, "Mittag-Leffler exponential-type example", ok, f"{detail} (<= {ratio:g})")


# }}}


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(numbers=None) -> list[CriterionResult]:
    return [CRITERIA[k]() for k in (numbers or sorted(CRITERIA))]
