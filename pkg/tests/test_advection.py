from __future__ import annotations

import logging
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfspec.advection import (
    advection_system,
    assemble_a1,
    assemble_a2,
    assemble_advection_rhs,
    basis_scale,
    evaluate_advection,
    solve_advection,
)
from tfspec.cases import CaseId, get_case
from tfspec.errors import SingularMatrixError
from tfspec.fracops import basis_term, rl_apply, rl_integral_jacobi, legendre_term
from tfspec.functions import FunctionSpec, constant, zero
from tfspec.problem import ProblemSpec, Regime, SpectralSolution
from tfspec.quadrature import gauss_jacobi
from tfspec.specfun import legendre_table

orders = st.tuples(st.floats(0.05, 0.95), st.floats(0.0, 1.0)).map(lambda p: (p[0], p[0] * p[1] * 0.999))


def manufactured(coeffs, a1, a2, d, lam):
    """Problem whose exact solution is sum_j coeffs[j] * phi_j."""
    pieces = []
    for j, c in enumerate(coeffs):
        for order, scale in ((a1, 1.0), (a2, d)):
            if scale == 0.0 or c == 0.0:
                continue
            t = rl_apply(basis_term(j, 0.5 * a1), order)
            pieces.append(FunctionSpec(lambda x, t=t, k=scale * c: k * np.exp(-lam * x) * t(x), left_exponent=t.mu))
    return ProblemSpec(a1, a2, d, lam, pieces or zero())


# matrices


def test_a1_examples():
    assert assemble_a1(1).tolist() == [[2.0]]
    np.testing.assert_allclose(np.diag(assemble_a1(3)), [2.0, 2 / 3, 2 / 5], rtol=1e-15)
    assert np.count_nonzero(assemble_a1(7) - np.diag(np.diag(assemble_a1(7)))) == 0


def test_a2_reduces_to_a1():
    np.testing.assert_allclose(assemble_a2(12, 0.4, 0.4), assemble_a1(12), atol=1e-14)


def test_a2_corner_entry():
    # mu = 0.3: Γ(1)^2/Γ(1.3)^2 * 2^1.6 Γ(1.3)^2/Γ(2.6)
    assert assemble_a2(4, 0.8, 0.2)[0, 0] == pytest.approx(2**1.6 / math.gamma(2.6), rel=1e-13)


@pytest.mark.parametrize("a1, a2", [(0.8, 0.2), (0.95, 0.0), (0.5, 0.45)])
def test_a2_matches_adjoint_route(a1, a2):
    # move the whole 2mu-integral onto the test side: A2[k,n] = ∫ L_n I_right^{2mu} L_k
    n = 10
    mu = 0.5 * (a1 - a2)
    rule = gauss_jacobi(64, 2 * mu, 0.0)
    trial = legendre_table(n - 1, rule.nodes)
    ref = np.empty((n, n))
    for k in range(n):
        t = rl_integral_jacobi(legendre_term(k, "right"), 2 * mu)
        smooth = t.jacobi_values(rule.nodes)  # (1-x)^{2mu} is in the rule weight
        ref[k] = (trial * rule.weights) @ smooth
    np.testing.assert_allclose(assemble_a2(n, a1, a2), ref, atol=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 32), orders)
def test_a2_sign_symmetry(n, ords):
    a1, a2 = ords
    m = assemble_a2(n, a1, a2)
    signs = (-1.0) ** np.add.outer(np.arange(n), np.arange(n))
    assert np.max(np.abs(m - signs * m.T)) <= 1e-12


def test_a2_rejects_bad_orders():
    with pytest.raises(ValueError):
        assemble_a2(4, 0.3, 0.5)
    with pytest.raises(ValueError):
        assemble_a1(0)


# right-hand side


def test_rhs_zero():
    p = ProblemSpec(0.5, 0.2, 1.0, 1.0, zero())
    assert np.array_equal(assemble_advection_rhs(p, 9), np.zeros(9))


def test_rhs_constant_beta_integral():
    a1, lam = 0.1, 1e-300
    s = 0.5 * a1
    p = ProblemSpec(a1, 0.0, 0.0, lam, constant(1.0))
    expected = 2 ** (s + 1) / (s + 1) / math.gamma(1 + s)
    assert assemble_advection_rhs(p, 3)[0] == pytest.approx(expected, rel=1e-14)


def test_rhs_matches_mpmath_projection():
    a1, lam = 0.6, 1.3
    p = ProblemSpec(a1, 0.2, 1.0, lam, FunctionSpec(np.cos))
    got = assemble_advection_rhs(p, 6)
    for k in range(6):
        t = rl_integral_jacobi(legendre_term(k, "right"), 0.5 * a1)
        with mpmath.workdps(25):
            ref = mpmath.quad(
                lambda x: mpmath.cos(x) * mpmath.exp(lam * x) * (1 - x) ** 0.3 * float(t.jacobi_values(float(x))[0]),
                [-1, 0, 1],
            )
        assert got[k] == pytest.approx(float(ref), abs=1e-10)


def test_singular_rhs_is_finite():
    p = get_case(CaseId.ADV_SINGULAR_RHS).problem(0.6, 0.3, 1.0, 1.0)
    assert np.all(np.isfinite(assemble_advection_rhs(p, 64)))


# solves


def test_d_zero_is_diagonal():
    p = ProblemSpec(0.5, 0.2, 0.0, 1.0, FunctionSpec(np.exp))
    f = assemble_advection_rhs(p, 8)
    np.testing.assert_allclose(solve_advection(p, 8).coeffs, f * (2 * np.arange(8) + 1) / 2, rtol=1e-14)


def test_recovers_basis_function():
    coeffs = np.zeros(5)
    coeffs[2] = 1.0
    sol = solve_advection(manufactured(coeffs, 0.7, 0.3, 2.0, 1.0), 5)
    np.testing.assert_allclose(sol.coeffs, coeffs, atol=1e-12)
    assert sol.residual <= 1e-10 * np.max(np.abs(advection_system(manufactured(coeffs, 0.7, 0.3, 2.0, 1.0), 5)[1]))


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 10), orders, st.floats(-0.3, 5.0), st.floats(0.1, 3.0), st.integers(0, 2**32 - 1))
def test_galerkin_solution_in_trial_space(n, ords, d, lam, seed):
    a1, a2 = ords
    coeffs = np.random.default_rng(seed).normal(size=n)
    logging.disable(logging.WARNING)
    try:
        sol = solve_advection(manufactured(coeffs, a1, a2, d, lam), n)
    finally:
        logging.disable(logging.NOTSET)
    np.testing.assert_allclose(sol.coeffs, coeffs, atol=1e-10 * max(1.0, sol.condition * 1e-3))


def test_mesh_independence_without_lower_order_term():
    # d = 0: the first coefficients do not depend on N
    p = get_case(CaseId.ADV_JUMP).problem(0.6, 0.2, 0.0, 1.0)
    small, large = solve_advection(p, 8).coeffs, solve_advection(p, 32).coeffs[:8]
    np.testing.assert_allclose(small, large, rtol=0, atol=5e-14)


def test_evaluate_examples():
    sol = SpectralSolution(np.zeros(4), 0.5, 1.0, Regime.ADVECTION)
    assert np.array_equal(evaluate_advection(sol, [-0.5, 0.5]), [0.0, 0.0])
    one = SpectralSolution(np.array([1.0]), 0.5, 1.0, Regime.ADVECTION)
    x = np.array([-0.3, 0.4, 1.0])
    np.testing.assert_allclose(one(x), np.exp(-x) * (1 + x) ** 0.25 / math.gamma(1.25), rtol=1e-14)
    assert evaluate_advection(one, [-1.0])[0] == 0.0


def test_solution_structure_is_polynomial():
    n = 12
    p = ProblemSpec(0.7, 0.3, 1.5, 1.0, FunctionSpec(np.exp))
    sol = solve_advection(p, n)
    cheb = np.cos(np.pi * (np.arange(2 * n) + 0.5) / (2 * n))
    g = sol(cheb) * np.exp(cheb) / (1 + cheb) ** 0.35
    fit = np.polynomial.legendre.legfit(cheb, g, n - 1)
    assert np.max(np.abs(np.polynomial.legendre.legval(cheb, fit) - g)) <= 1e-10 * np.max(np.abs(g))


def test_basis_scale_values():
    np.testing.assert_allclose(basis_scale(3, 0.5), [1 / math.gamma(1.5), 1 / math.gamma(2.5), 2 / math.gamma(3.5)], rtol=1e-15)


def test_singular_system_raises(caplog):
    a1, a2 = 0.6, 0.2
    d = -2.0 / assemble_a2(1, a1, a2)[0, 0]
    with caplog.at_level(logging.WARNING, logger="tfspec.problem"):
        p = ProblemSpec(a1, a2, d, 1.0, constant(1.0))
    assert "inf-sup" in caplog.text
    with pytest.raises(SingularMatrixError):
        solve_advection(p, 1)


def test_regime_mismatch():
    p = ProblemSpec(1.5, 1.2, 0.1, 1.0, constant(1.0), regime=Regime.DIFFUSION)
    with pytest.raises(ValueError):
        advection_system(p, 4)
