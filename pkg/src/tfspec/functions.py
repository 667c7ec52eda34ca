"""Evaluable scalar functions with declared endpoint behaviour."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .errors import SingularityError


@dataclass(frozen=True)
class FunctionSpec:
    r"""A function on ``support = (a, b)`` with endpoint power behaviour.

    ``eval(x) / ((x-a)^{left_exponent} (b-x)^{right_exponent})`` is bounded
    on the support. Quadrature code absorbs these powers into Jacobi weights
    so singular endpoints are never sampled. Outside its support the function
    is zero, which lets a piecewise function be written as a sum of pieces.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    left_exponent: float = 0.0
    right_exponent: float = 0.0
    support: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self) -> None:
        if not (self.left_exponent > -1.0 and self.right_exponent > -1.0):
            raise SingularityError(
                "endpoint exponents must exceed -1 for integrability: "
                f"({self.left_exponent}, {self.right_exponent})"
            )
        a, b = self.support
        if not -1.0 <= a < b <= 1.0:
            raise ValueError(f"support must be a subinterval of [-1, 1]: {self.support}")

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=np.float64))

    @property
    def full_support(self) -> bool:
        return self.support == (-1.0, 1.0)

    def smooth_part(self, x: np.ndarray) -> np.ndarray:
        """``eval(x)`` with the declared endpoint powers divided out."""
        a, b = self.support
        x = np.asarray(x, dtype=np.float64)
        out = self.eval(x)
        if self.left_exponent:
            out = out / (x - a) ** self.left_exponent
        if self.right_exponent:
            out = out / (b - x) ** self.right_exponent
        return out


Piecewise = Union[FunctionSpec, Sequence[FunctionSpec]]


def as_pieces(f: Piecewise) -> tuple[FunctionSpec, ...]:
    return (f,) if isinstance(f, FunctionSpec) else tuple(f)


def evaluate_pieces(f: Piecewise, x) -> np.ndarray:
    """Evaluate a sum of pieces, each only on its own support."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros_like(x)
    for piece in as_pieces(f):
        a, b = piece.support
        # pieces own (a, b]; the leftmost piece also owns -1
        mask = (x > a) & (x <= b) if a > -1.0 else (x >= a) & (x <= b)
        if np.any(mask):
            out[mask] += piece(x[mask])
    return out


def breakpoints(pieces: Iterable[FunctionSpec]) -> list[float]:
    pts = {-1.0, 1.0}
    for piece in pieces:
        pts.update(piece.support)
    return sorted(pts)


def constant(c: float) -> FunctionSpec:
    return FunctionSpec(lambda x: np.full_like(x, c, dtype=np.float64))


def zero() -> FunctionSpec:
    return constant(0.0)
