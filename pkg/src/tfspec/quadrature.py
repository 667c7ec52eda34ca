"""Gauss-Legendre and Gauss-Jacobi rules and weighted integration on [-1, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg as la

from .functions import FunctionSpec

MAX_NODES = 2048


@dataclass(frozen=True)
class QuadratureRule:
    r"""Nodes and weights for :math:`\int_a^b (b-x)^{e_+}(x-a)^{e_-} g(x)\,dx`.

    The weight :math:`(b-x)^{e_+}(x-a)^{e_-}` is absorbed into *weights*, so a
    rule is applied to the smooth factor *g* only. For rules on the reference
    interval ``(a, b) = (-1, 1)`` this is the usual Jacobi weight
    :math:`(1-x)^{e_+}(1+x)^{e_-}`.
    """

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponents: tuple[float, float] = (0.0, 0.0)
    interval: tuple[float, float] = field(default=(-1.0, 1.0))

    def __len__(self) -> int:
        return self.nodes.size

    def integrate(self, values: np.ndarray) -> float:
        """Apply the rule to samples of the smooth factor at :attr:`nodes`."""
        return float(np.dot(self.weights, values))

    def mapped(self, a: float, b: float) -> QuadratureRule:
        """Affinely transplant a reference rule to ``(a, b)``."""
        lo, hi = self.interval
        if (lo, hi) != (-1.0, 1.0):
            raise ValueError("only reference rules can be mapped")
        ea, eb = self.weight_exponents
        h = 0.5 * (b - a)
        nodes = a + h * (self.nodes + 1.0)
        weights = self.weights * h ** (1.0 + ea + eb)
        return QuadratureRule(_frozen(nodes), _frozen(weights), (ea, eb), (a, b))


def _frozen(x: np.ndarray) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    x.setflags(write=False)
    return x


def jacobi_moment0(a: float, b: float) -> float:
    r""":math:`\int_{-1}^1 (1-x)^a (1+x)^b\,dx = 2^{a+b+1}B(a+1, b+1)`."""
    return math.exp(
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(a + 1.0)
        + math.lgamma(b + 1.0)
        - math.lgamma(a + b + 2.0)
    )


def jacobi_recurrence(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the Jacobi matrix for the orthonormal polynomials."""
    k = np.arange(n, dtype=np.float64)
    s = a + b
    diag = np.empty(n)
    diag[0] = (b - a) / (s + 2.0)
    if n > 1:
        kk = k[1:]
        diag[1:] = (b * b - a * a) / ((2.0 * kk + s) * (2.0 * kk + s + 2.0))

    off = np.empty(max(n - 1, 0))
    if n > 1:
        # beta_1 written without the removable 0/0 at a + b = -1
        off[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
        kk = k[2:n]
        c = 2.0 * kk + s
        off[1:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + s) / (c * c * (c + 1.0) * (c - 1.0))
        )
    return diag, np.sqrt(off)


@lru_cache(maxsize=256)
def _gauss_jacobi_cached(n: int, a: float, b: float) -> QuadratureRule:
    diag, off = jacobi_recurrence(n, a, b)
    if n == 1:
        nodes, vecs = diag.copy(), np.ones((1, 1))
    else:
        nodes, vecs = la.eigh_tridiagonal(diag, off)
    weights = jacobi_moment0(a, b) * vecs[0] ** 2

    if a == b:
        # enforce exact symmetry of the rule
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])

    return QuadratureRule(_frozen(nodes), _frozen(weights), (a, b))


def gauss_jacobi(n: int, a: float, b: float) -> QuadratureRule:
    r"""*n*-point Gauss rule for the weight :math:`(1-x)^a (1+x)^b` on ``(-1, 1)``.

    Built by the Golub-Welsch method: nodes are the eigenvalues of the
    symmetric tridiagonal Jacobi matrix, weights the squared first components
    of its normalized eigenvectors times the zeroth moment.
    """
    if not (a > -1.0 and b > -1.0):
        raise ValueError(f"Gauss-Jacobi requires a, b > -1: got ({a}, {b})")
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"number of nodes must be in [1, {MAX_NODES}]: {n}")
    return _gauss_jacobi_cached(int(n), float(a), float(b))


def gauss_legendre(n: int) -> QuadratureRule:
    return gauss_jacobi(n, 0.0, 0.0)


def mapped_rule(
    n: int, a: float, b: float, left_exponent: float = 0.0, right_exponent: float = 0.0
) -> QuadratureRule:
    r"""Rule for :math:`\int_a^b (x-a)^{e_-}(b-x)^{e_+} g(x)\,dx`."""
    return gauss_jacobi(n, right_exponent, left_exponent).mapped(a, b)


def integrate(rule: QuadratureRule, f: FunctionSpec) -> float:
    """Sum ``w_j f(x_j)``; the rule weight multiplies *f* implicitly."""
    values = np.asarray(f(rule.nodes), dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise FloatingPointError("integrand is not finite at some quadrature nodes")
    return rule.integrate(values)
