from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tfspec.errors import PoleError
from tfspec.specfun import (
    JacobiParams,
    gamma_fn,
    gamma_ratio,
    jacobi_at_one,
    jacobi_eval,
    jacobi_exact,
    jacobi_table,
    legendre_eval,
    legendre_table,
    mittag_leffler,
    rgamma,
)
from tfspec.quadrature import gauss_legendre

params = st.floats(-1.9, 2.0, allow_nan=False)
unit = st.floats(-1.0, 1.0, allow_nan=False)


# gamma


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (0.5, 1.7724538509055160), (6.0, 120.0)])
def test_gamma_examples(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -37.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_fn(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma_fn(172.5)


@settings(max_examples=300, deadline=None)
@given(st.floats(-170.0, 170.0).filter(lambda x: abs(x - round(x)) > 1e-6 or x >= 1e-300))
def test_gamma_matches_mpmath(x):
    g = gamma_fn(x)
    if g == 0.0 or not math.isfinite(g):
        return
    ref = mpmath.gamma(mpmath.mpf(x))
    assert abs(g - float(ref)) <= 1e-13 * abs(float(ref))


def test_gamma_ratio_large_arguments():
    # Γ(300.5)/Γ(300) ~ sqrt(300) without overflow
    ref = mpmath.gamma(300.5) / mpmath.gamma(300)
    assert gamma_ratio(300.5, 300.0) == pytest.approx(float(ref), rel=1e-12)
    assert gamma_ratio(7.5, 3.25) == pytest.approx(float(mpmath.gamma(7.5) / mpmath.gamma(3.25)), rel=1e-14)
    assert gamma_ratio(2.5, -3.0) == 0.0
    assert rgamma(-2.0) == 0.0


# Jacobi


def test_jacobi_degree_zero():
    assert jacobi_eval(0, (3.7, -1.6), 0.123) == 1.0


def test_jacobi_endpoint_example():
    expected = math.gamma(7 + 0.35 + 1) / (math.gamma(8) * math.gamma(1.35))
    assert jacobi_eval(7, JacobiParams(0.35, -0.35), 1.0) == pytest.approx(expected, rel=1e-13)


def _rodrigues_sympy(n, a, b, x):
    """Differentiate (1-t)^(n+a) (1+t)^(n+b) symbolically and divide the weight back out."""
    t = sympy.Symbol("t")
    a, b = sympy.Rational(a), sympy.Rational(b)
    w = (1 - t) ** (n + a) * (1 + t) ** (n + b)
    poly = (-1) ** n / (2**n * sympy.factorial(n)) * sympy.diff(w, t, n) / ((1 - t) ** a * (1 + t) ** b)
    return sympy.N(poly.subs(t, sympy.Rational(x)), 30)


def test_jacobi_rodrigues_oracle():
    a, b, x = Fraction(9, 10), Fraction(-6, 5), Fraction(-2, 5)
    ref = _rodrigues_sympy(3, a, b, x)
    assert jacobi_eval(3, (0.9, -1.2), -0.4) == pytest.approx(float(ref), rel=1e-13, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), params, params, unit)
def test_jacobi_reflection_degree5(n, a, b, x):
    n = 5
    lhs = jacobi_eval(n, (a, b), x)
    rhs = (-1) ** n * jacobi_eval(n, (b, a), -x)
    scale = max(1.0, abs(jacobi_at_one(n, a)), abs(jacobi_at_one(n, b)))
    assert abs(lhs - rhs) <= 1e-12 * scale


@pytest.mark.parametrize("n", [1, 5, 17, 64])
def test_jacobi_reflection_property(n):
    rng = np.random.default_rng(n)
    xs = np.linspace(-1, 1, 41)
    for a, b in rng.uniform(-1.4, 1.4, size=(20, 2)):
        lhs = jacobi_table(n, (a, b), xs)[n]
        rhs = (-1) ** n * jacobi_table(n, (b, a), -xs)[n]
        assert np.max(np.abs(lhs - rhs)) <= 1e-11 * np.max(np.abs(lhs))


def test_jacobi_endpoint_identity_grid():
    grid = np.round(np.arange(-1.4, 1.41, 0.2), 10)
    for a in grid:
        if a == -1.0:
            continue  # Γ(a+1) has a pole
        for b in grid:
            for n in (0, 1, 2, 7, 30, 64):
                got = jacobi_eval(n, (a, b), 1.0) * math.gamma(n + 1) * math.gamma(a + 1)
                want = math.gamma(n + a + 1)
                assert got == pytest.approx(want, rel=1e-9, abs=1e-300), (n, a, b)


def test_jacobi_table_examples():
    assert np.array_equal(jacobi_table(0, (0.3, 0.1), [0.2, 0.5]), np.ones((1, 2)))
    np.testing.assert_allclose(jacobi_table(2, (0.0, 0.0), [0.0])[:, 0], [1.0, 0.0, -0.5], atol=1e-16)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), params, params, st.lists(unit, min_size=1, max_size=6))
def test_jacobi_table_bit_identical_to_scalar(nmax, a, b, xs):
    table = jacobi_table(nmax, (a, b), xs)
    for n in (0, nmax // 2, nmax):
        for j, x in enumerate(xs):
            assert table[n, j] == jacobi_eval(n, (a, b), x)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 64), params, params, unit)
def test_jacobi_matches_mpmath(n, a, b, x):
    got = jacobi_eval(n, (a, b), x)
    with mpmath.workdps(40):
        ref = float(mpmath.jacobi(n, a, b, x, zeroprec=400))
        ends = [float(mpmath.jacobi(n, a, b, e, zeroprec=400)) for e in (-1, 1)]
        scale = max(1.0, abs(ref), *map(abs, ends))
    assert abs(got - ref) <= 1e-10 * scale


@pytest.mark.parametrize("a, b", [(-1.5, -0.5), (-1.25, -0.75), (-2.0, 0.0), (-1.0, -1.0)])
def test_jacobi_degenerate_recurrence_uses_exact_expansion(a, b):
    # a + b = -2 zeroes a recurrence denominator
    xs = [-0.7, 0.0, 0.45]
    table = jacobi_table(6, (a, b), xs + [1.0])
    for n in range(7):
        for j, x in enumerate(xs):
            ref = float(_rodrigues_sympy(n, a, b, x))
            assert table[n, j] == pytest.approx(ref, rel=1e-12, abs=1e-13)
        # P_n(1) is the generalized binomial C(n+a, n)
        assert table[n, -1] == pytest.approx(float(mpmath.binomial(n + a, n)), rel=1e-13, abs=1e-15)
        assert all(table[n, j] == jacobi_exact(n, a, b, x) for j, x in enumerate(xs)) or n == 0


# Legendre


def test_legendre_examples():
    assert all(legendre_eval(n, 1.0) == 1.0 for n in range(20))
    assert legendre_eval(1, 0.3) == 0.3
    assert legendre_eval(4, 0.5) == pytest.approx(-0.2890625, abs=1e-16)


def test_legendre_is_jacobi_zero_zero():
    xs = np.linspace(-1, 1, 33)
    np.testing.assert_allclose(legendre_table(40, xs), jacobi_table(40, (0.0, 0.0), xs), atol=1e-13)


def test_legendre_orthogonality():
    rule = gauss_legendre(128)
    table = legendre_table(32, rule.nodes)
    gram = (table * rule.weights) @ table.T
    expected = np.diag(2.0 / (2.0 * np.arange(33) + 1.0))
    assert np.max(np.abs(gram - expected)) <= 1e-12


def test_legendre_negative_degree():
    with pytest.raises(ValueError):
        legendre_eval(-1, 0.0)


# Mittag-Leffler


def test_mittag_leffler_examples():
    assert mittag_leffler(1.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-15)
    assert mittag_leffler(1.0, 2.0, 0.0) == 1.0
    assert mittag_leffler(1.0, 4.0, 1.0) == pytest.approx(math.e - 2.5, rel=1e-14)


def test_mittag_leffler_exponential():
    z = np.linspace(-4, 4, 161)
    got = mittag_leffler(1.0, 1.0, z)
    assert np.max(np.abs(got / np.exp(z) - 1.0)) <= 1e-13


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 2.0), st.floats(-1.5, 4.0), st.floats(-2.0, 3.0))
def test_mittag_leffler_matches_mpmath_series(g, b, z):
    got = mittag_leffler(g, b, z)
    with mpmath.workdps(50):
        ref = mpmath.nsum(lambda k: mpmath.mpf(z) ** k * mpmath.rgamma(g * k + b), [0, mpmath.inf])
        mag = mpmath.nsum(lambda k: abs(mpmath.mpf(z)) ** k * abs(mpmath.rgamma(g * k + b)), [0, mpmath.inf])
    assert abs(got - float(ref)) <= 1e-13 * float(1 + mag)


def test_mittag_leffler_shifted_identity():
    # E_{1,b}(z) = z E_{1,b+1}(z) + 1/Γ(b)
    z = np.linspace(0.0, 2.0, 9)
    for b in (0.25, 1.5, 2.75, 4.0):
        lhs = mittag_leffler(1.0, b, z)
        rhs = z * mittag_leffler(1.0, b + 1.0, z) + 1.0 / math.gamma(b)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-14)


def test_mittag_leffler_domain():
    with pytest.raises(ValueError):
        mittag_leffler(0.0, 1.0, 0.5)
    assert isinstance(mittag_leffler(0.5, 1.0, 0.3), float)
    with pytest.raises(OverflowError), np.errstate(over="ignore", invalid="ignore"):
        mittag_leffler(0.25, 0.0, 3.0)
