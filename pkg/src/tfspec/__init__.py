"""Spectral Petrov-Galerkin solvers for tempered fractional two-point problems on [-1, 1]."""

from __future__ import annotations

from .advection import assemble_a1, assemble_a2, assemble_advection_rhs, evaluate_advection, solve_advection
from .cases import CaseId, ExampleCase, get_case
from .convergence import ConvergenceReport, fit_rate, l2_error, lp_error, run_case, solve
from .diffusion import (
    assemble_b1,
    assemble_b2,
    assemble_boundary_row,
    assemble_diffusion_rhs,
    evaluate_diffusion,
    solve_diffusion,
)
from .errors import PatternError, PoleError, SingularityError, SingularMatrixError
from .functions import FunctionSpec
from .problem import ProblemSpec, Regime, SpectralSolution
from .quadrature import QuadratureRule, gauss_jacobi, gauss_legendre
from .report import emit_report

__version__ = "0.1.0"

__all__ = [
    "CaseId",
    "ConvergenceReport",
    "ExampleCase",
    "FunctionSpec",
    "PatternError",
    "PoleError",
    "ProblemSpec",
    "QuadratureRule",
    "Regime",
    "SingularMatrixError",
    "SingularityError",
    "SpectralSolution",
    "assemble_a1",
    "assemble_a2",
    "assemble_advection_rhs",
    "assemble_b1",
    "assemble_b2",
    "assemble_boundary_row",
    "assemble_diffusion_rhs",
    "emit_report",
    "evaluate_advection",
    "evaluate_diffusion",
    "fit_rate",
    "gauss_jacobi",
    "gauss_legendre",
    "get_case",
    "l2_error",
    "lp_error",
    "run_case",
    "solve",
    "solve_advection",
    "solve_diffusion",
]
