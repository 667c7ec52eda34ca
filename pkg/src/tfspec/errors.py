"""Exception types raised across the package."""

from __future__ import annotations

import numpy as np


class PoleError(ValueError):
    """A gamma function argument sits on a pole."""


class PatternError(ValueError):
    """A weighted Jacobi term does not have the shape an operator identity needs."""


class SingularityError(ValueError):
    """An endpoint exponent makes an integral diverge."""


class SingularMatrixError(np.linalg.LinAlgError):
    """The assembled spectral system could not be factorized."""

    def __init__(self, message: str, condition: float = float("inf")) -> None:
        super().__init__(f"{message} (condition estimate {condition:.3e})")
        self.condition = condition
