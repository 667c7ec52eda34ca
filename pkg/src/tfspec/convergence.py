"""L2 errors, rate fitting and the convergence-study driver."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .advection import solve_advection
from .cases import ExampleCase
from .diffusion import solve_diffusion
from .errors import SingularityError
from .functions import FunctionSpec, Piecewise, as_pieces, breakpoints, evaluate_pieces
from .problem import ProblemSpec, Regime, SpectralSolution
from .quadrature import mapped_rule

DEFAULT_NS = (8, 16, 32, 64, 128, 256)
RATE_POINTS = 4


class DegenerateFitError(ValueError):
    """Rate fit requested on fewer than two rows or non-positive errors."""


class CaseError(RuntimeError):
    """A solver failure annotated with the case and parameters being run."""


@dataclass(frozen=True)
class ConvergenceReport:
    case: str
    alpha1: float
    alpha2: float
    d: float
    lam: float
    rows: tuple[tuple[int, float], ...]
    fitted_rate: float
    wall_times: tuple[float, ...] = field(default=(), compare=False)
    reference_n: Optional[int] = None

    def __post_init__(self) -> None:
        ns = [n for n, _ in self.rows]
        if ns != sorted(ns):
            raise ValueError("report rows must be sorted by N")
        for _, e in self.rows:
            if not (math.isfinite(e) and e >= 0.0):
                raise ValueError(f"errors must be finite and non-negative: {e}")

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.rows]

    @property
    def errors(self) -> list[float]:
        return [e for _, e in self.rows]

    def error_at(self, n: int) -> float:
        return dict(self.rows)[n]


def solve(problem: ProblemSpec, n: int) -> SpectralSolution:
    if problem.regime is Regime.ADVECTION:
        return solve_advection(problem, n)
    return solve_diffusion(problem, n)


# {{{ L2 error


def _endpoint_exponent(pieces: Sequence[FunctionSpec], point: float, side: str) -> float:
    """Smallest declared power among pieces with an endpoint at *point*."""
    out = math.inf
    for p in pieces:
        a, b = p.support
        if side == "left" and a == point:
            out = min(out, p.left_exponent)
        if side == "right" and b == point:
            out = min(out, p.right_exponent)
    return out


def lp_error(
    sol: Callable[[np.ndarray], np.ndarray] | Piecewise,
    exact: Piecewise,
    p: float = 2.0,
    npts: int | None = None,
) -> float:
    r""":math:`\|u_N - u\|_{L_p(-1,1)}` by panel-wise Gauss-Jacobi quadrature.

    The interval is split at every support endpoint of *exact* (and of *sol*
    when it is a piecewise function). On each panel, a negative power
    :math:`(x-a)^{\sigma}` declared at a panel end is raised to the *p* and
    absorbed into the rule weight, so unbounded but *p*-integrable errors are
    measured without sampling the singular factor.

    :raises SingularityError: if some declared power makes the integrand non-integrable.
    """
    if not p >= 1.0:
        raise ValueError(f"L_p error needs p >= 1: {p}")
    pieces = list(as_pieces(exact))
    if isinstance(sol, (FunctionSpec, tuple, list)):
        pieces += list(as_pieces(sol))

        def approx(x):
            return evaluate_pieces(sol, x)
    elif isinstance(sol, SpectralSolution):
        pieces.append(sol.as_function())
        approx = sol
    else:
        approx = sol

    if npts is None:
        npts = 512
        if isinstance(sol, SpectralSolution):
            npts = max(npts, 2 * len(sol) + 64)

    total = 0.0
    pts = breakpoints(pieces)
    for a, b in zip(pts[:-1], pts[1:]):
        lo = min(0.0, _endpoint_exponent(pieces, a, "left"))
        hi = min(0.0, _endpoint_exponent(pieces, b, "right"))
        if p * lo <= -1.0 or p * hi <= -1.0:
            raise SingularityError(f"|u_N - u|^{p} is not integrable on ({a}, {b})")
        rule = mapped_rule(npts, a, b, p * lo, p * hi)
        x = rule.nodes
        diff = approx(x) - evaluate_pieces(exact, x)
        if lo:
            diff = diff * (x - a) ** (-lo)
        if hi:
            diff = diff * (b - x) ** (-hi)
        total += rule.integrate(np.abs(diff) ** p)
    return max(total, 0.0) ** (1.0 / p)


def l2_error(
    sol: Callable[[np.ndarray], np.ndarray] | Piecewise,
    exact: Piecewise,
    npts: int | None = None,
) -> float:
    """:func:`lp_error` with ``p = 2``."""
    return lp_error(sol, exact, 2.0, npts)


# }}}


def fit_rate(rows: Sequence[tuple[int, float]]) -> float:
    """Negated least-squares slope of ``log(error)`` against ``log(N)``."""
    if len(rows) < 2:
        raise DegenerateFitError(f"need at least two rows to fit a rate, got {len(rows)}")
    ns = np.array([n for n, _ in rows], dtype=np.float64)
    es = np.array([e for _, e in rows], dtype=np.float64)
    if np.any(~(es > 0)) or np.any(~(ns > 0)):
        raise DegenerateFitError("rate fit needs positive N and positive errors")
    if np.unique(ns).size < 2:
        raise DegenerateFitError("rate fit needs at least two distinct N")
    slope = np.polyfit(np.log(ns), np.log(es), 1)[0]
    return float(-slope)


def run_case(
    case: ExampleCase,
    alpha1: float,
    alpha2: float,
    d: float,
    lam: float = 1.0,
    ns: Sequence[int] = DEFAULT_NS,
    *,
    reference_n: int | None = None,
    rate_points: int = RATE_POINTS,
) -> ConvergenceReport:
    """Solve *case* at each N and measure L2 errors.

    Cases without a closed-form solution are compared against a solve at
    ``reference_n`` (default ``2 * max(ns)``). The rate is fitted over the
    largest *rate_points* values of N.
    """
    ns = sorted(int(n) for n in ns)
    if not ns:
        raise ValueError("empty N-list")
    context = f"case {case.id.value} (alpha1={alpha1}, alpha2={alpha2}, d={d}, lambda={lam})"
    try:
        problem = case.problem(alpha1, alpha2, d, lam)
        exact = case.exact_solution(alpha1, alpha2, d, lam)
        ref_n = None
        if exact is None:
            ref_n = reference_n or 2 * ns[-1]
            exact = solve(problem, ref_n).as_function()

        rows, times = [], []
        for n in ns:
            t0 = time.perf_counter()
            sol = solve(problem, n)
            times.append(time.perf_counter() - t0)
            rows.append((n, l2_error(sol, exact)))
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        raise CaseError(f"{context}: {exc}") from exc

    tail = rows[-rate_points:]
    rate = fit_rate(tail) if len(tail) >= 2 and all(e > 0 for _, e in tail) else math.nan
    return ConvergenceReport(
        case.id.value, alpha1, alpha2, d, lam, tuple(rows), rate, tuple(times), ref_n
    )
