"""Scalar special functions: gamma, Jacobi and Legendre polynomials, Mittag-Leffler.

Jacobi polynomials are needed for *arbitrary* real parameters here, including
values below -1 (the diffusion test functions use exponents in (-1.5, -1)).
They are always the polynomials fixed by the Rodrigues formula

.. math::

    (1-x)^a (1+x)^b J_n^{a,b}(x)
    = \frac{(-1)^n}{2^n n!} \frac{d^n}{dx^n}\left[(1-x)^{n+a}(1+x)^{n+b}\right],

whose explicit expansion is
:math:`\sum_j \binom{n+a}{j}\binom{n+b}{n-j} (\tfrac{x-1}{2})^{n-j}(\tfrac{x+1}{2})^j`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.special as sc

from .errors import PoleError

MAX_JACOBI_DEGREE = 512


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi exponents ``(a, b)``; any finite reals are allowed."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"Jacobi parameters must be finite: ({self.a}, {self.b})")

    def swapped(self) -> JacobiParams:
        return JacobiParams(self.b, self.a)


def _as_params(p: JacobiParams | tuple[float, float]) -> JacobiParams:
    return p if isinstance(p, JacobiParams) else JacobiParams(float(p[0]), float(p[1]))


def is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


# {{{ gamma


def gamma_fn(x: float) -> float:
    """Euler gamma function for real *x*.

    :raises PoleError: if *x* is a non-positive integer.
    :raises OverflowError: if the result is not representable.
    """
    x = float(x)
    if is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    return math.gamma(x)


def log_gamma(x: float) -> float:
    """``log|Γ(x)|``."""
    if is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    return math.lgamma(x)


def rgamma(x):
    """Reciprocal gamma function, zero at the poles; accepts arrays."""
    return sc.rgamma(x)


def gamma_ratio(a: float, b: float) -> float:
    """``Γ(a) / Γ(b)`` without intermediate overflow.

    Returns zero when only *b* is a pole.
    """
    if is_pole(b):
        if is_pole(a):
            raise PoleError(f"gamma ratio undefined: both {a} and {b} are poles")
        return 0.0
    if is_pole(a):
        raise PoleError(f"gamma has a pole at {a}")
    if a == b:
        return 1.0
    if max(a, b) < 160.0:
        return math.gamma(a) / math.gamma(b)
    # poch(b, a - b) = Γ(a)/Γ(b), accurate for large arguments
    return float(sc.poch(b, a - b))


# }}}


# {{{ Jacobi


def _recurrence_ok(n: int, a: float, b: float) -> bool:
    s = a + b
    for k in range(1, n):
        if abs(k + s + 1.0) < 1.0e-12 or abs(2 * k + s) < 1.0e-12:
            return False
    return True


def _gen_binomial(r: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= (r - i) / (i + 1)
    return out


def jacobi_exact(n: int, a: float, b: float, x: float) -> float:
    """Rodrigues expansion evaluated in exact rational arithmetic.

    Every float is a dyadic rational, so the only rounding is the final
    conversion. Slow; used where the three-term recurrence degenerates.
    """
    fa, fb, fx = Fraction(a), Fraction(b), Fraction(x)
    lo, hi = (fx - 1) / 2, (fx + 1) / 2
    total = Fraction(0)
    for j in range(n + 1):
        c = _gen_binomial(n + fa, j) * _gen_binomial(n + fb, n - j)
        if c:
            total += c * lo ** (n - j) * hi**j
    return float(total)


def jacobi_table(
    nmax: int, p: JacobiParams | tuple[float, float], xs: Sequence[float] | np.ndarray
) -> np.ndarray:
    """Values of :math:`J_n^{a,b}(x)` for ``n = 0..nmax``; shape ``(nmax + 1, *xs.shape)``.

    Uses the standard three-term recurrence, whose coefficients are polynomial
    identities valid for any real ``(a, b)``. When ``a + b`` is an integer
    ``<= -2`` some recurrence denominator vanishes and the rows are computed
    from the exact Rodrigues expansion instead.
    """
    p = _as_params(p)
    if nmax < 0:
        raise ValueError(f"degree must be non-negative: {nmax}")
    if nmax > MAX_JACOBI_DEGREE:
        raise ValueError(f"degree {nmax} exceeds supported maximum {MAX_JACOBI_DEGREE}")

    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    a, b = p.a, p.b
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out

    if not _recurrence_ok(nmax, a, b):
        for n in range(1, nmax + 1):
            out[n] = np.reshape([jacobi_exact(n, a, b, float(xj)) for xj in x.flat], x.shape)
        return out

    s = a + b
    out[1] = (a + 1.0) + 0.5 * (s + 2.0) * (x - 1.0)
    for k in range(1, nmax):
        c = 2.0 * k + s
        den = 2.0 * (k + 1) * (k + s + 1.0) * c
        c1 = (c + 1.0) * (c + 2.0) * c / den
        c0 = (c + 1.0) * (a * a - b * b) / den
        cm = 2.0 * (k + a) * (k + b) * (c + 2.0) / den
        out[k + 1] = (c0 + c1 * x) * out[k] - cm * out[k - 1]
    return out


def jacobi_eval(n: int, p: JacobiParams | tuple[float, float], x: float) -> float:
    """Single value :math:`J_n^{a,b}(x)`; bit-identical to :func:`jacobi_table`."""
    return float(jacobi_table(n, p, [x])[n, 0])


def jacobi_at_one(n: int, a: float) -> float:
    r""":math:`J_n^{a,b}(1) = \Gamma(n+a+1)/(\Gamma(n+1)\Gamma(a+1))`, any ``b``."""
    # equals the generalized binomial (n + a choose n)
    out = 1.0
    for i in range(1, n + 1):
        out *= (a + i) / i
    return out


# }}}


# {{{ Legendre


def legendre_table(nmax: int, xs: Sequence[float] | np.ndarray) -> np.ndarray:
    x = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax > 0:
        out[1] = x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def legendre_eval(n: int, x: float) -> float:
    if n < 0:
        raise ValueError(f"degree must be non-negative: {n}")
    return float(legendre_table(n, [x])[n, 0])


# }}}


# {{{ Mittag-Leffler


def mittag_leffler(g: float, b: float, z, *, max_terms: int = 5000):
    r"""Two-parameter Mittag-Leffler function :math:`\sum_k z^k / \Gamma(g k + b)`.

    Direct power series, so only meant for moderate ``|z|`` (a few units).
    Accepts scalars or arrays of real *z*.
    """
    if not g > 0:
        raise ValueError(f"Mittag-Leffler requires g > 0: g = {g}")

    zz = np.asarray(z, dtype=np.float64)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)

    zmax = float(np.max(np.abs(zz))) if zz.size else 0.0
    # past this index the terms decrease monotonically
    kmin = math.ceil(max(0.0, (2.0 * zmax ** (1.0 / g) + 2.0 - b) / g))

    total = np.zeros_like(zz)
    zk = np.ones_like(zz)
    for k in range(max_terms):
        term = zk * rgamma(g * k + b)
        if not np.all(np.isfinite(term)):
            raise OverflowError(
                f"Mittag-Leffler series overflows (g = {g}, b = {b}, max |z| = {zmax}); "
                "the direct series only serves moderate arguments"
            )
        total += term
        if k >= kmin and np.all(np.abs(term) <= 1.0e-16 * (1.0 + np.abs(total))):
            break
        zk = zk * zz
    else:
        raise ArithmeticError(
            f"Mittag-Leffler series did not converge in {max_terms} terms "
            f"(g = {g}, b = {b}, max |z| = {zmax})"
        )

    return float(total[0]) if scalar else total


# }}}
