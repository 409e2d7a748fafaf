"""Tests for graded functional calculus and the comultiplication checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bottlab.funcalc import (
    DeltaCheck,
    GradedFunction,
    delta_on_generators,
    delta_via_xr_check,
    gaussian,
    matrix_function,
    scale,
    x_gaussian,
)
from bottlab.graded import GradedMatrix
from bottlab.oscillator import oscillator_rep


# ---------------------------------------------------------------------------
# the two generators
# ---------------------------------------------------------------------------

def test_generator_values_and_parity():
    u, v = gaussian(), x_gaussian()
    assert u.parity == 0 and v.parity == 1
    x = np.linspace(-4, 4, 33)
    assert np.allclose(u(x), np.exp(-x * x))
    assert np.allclose(v(x), x * np.exp(-x * x))
    assert u(np.array([0.0]))[0] == 1.0


def test_generator_sup_norms():
    assert gaussian().sup_norm() == 1.0
    # max of |x e^{-x^2}| is at x = 1/sqrt(2)
    expected = math.exp(-0.5) / math.sqrt(2.0)
    assert math.isclose(x_gaussian().sup_norm(), expected, rel_tol=1e-3)


def test_even_and_odd_parts():
    u, v = gaussian(), x_gaussian()
    x = np.linspace(-5, 5, 101)
    mixed = u + v
    assert mixed.parity is None
    assert np.allclose(mixed.even_part()(x), u(x), atol=1e-15)
    assert np.allclose(mixed.odd_part()(x), v(x), atol=1e-15)
    assert np.abs(v.even_part()(x)).max() == 0.0


def test_products_compose_parity():
    u, v = gaussian(), x_gaussian()
    x = np.linspace(-3, 3, 61)
    uv = u * v
    assert uv.parity == 1
    assert np.allclose(uv(x), x * np.exp(-2 * x * x))
    assert (v * v).parity == 0
    assert (2.0 * u).parity == 0
    assert np.allclose((2.0 * u)(x), 2 * np.exp(-x * x))


def test_scale_values_and_validation():
    u = gaussian()
    x = np.linspace(-2, 2, 21)
    assert np.allclose(scale(u, 2.0)(x), u(x / 2.0))
    assert scale(u, 1.0).parity == 0
    with pytest.raises(ValueError):
        scale(u, 0.0)
    with pytest.raises(ValueError):
        scale(u, -1.0)


# ---------------------------------------------------------------------------
# matrix functional calculus
# ---------------------------------------------------------------------------

def _random_symmetric(rng, n):
    m = rng.standard_normal((n, n))
    return (m + m.T) / 2.0


def test_matrix_function_against_constructed_eigensystem():
    # oracle: build the eigensystem first, then the matrix from it
    rng = np.random.default_rng(21)
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    lam = rng.uniform(-3, 3, size=6)
    a = (q * lam) @ q.T
    u = gaussian()
    expected = (q * np.exp(-lam * lam)) @ q.T
    assert np.allclose(matrix_function(u, a), expected, atol=1e-12)


def test_matrix_function_requires_symmetric():
    with pytest.raises(ValueError, match="symmetric"):
        matrix_function(gaussian(), np.array([[0.0, 1.0], [0.0, 0.0]]))


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_matrix_function_multiplicative(seed):
    # (fg)(T) = f(T) g(T) because both sides share the eigenbasis
    rng = np.random.default_rng(seed)
    t = _random_symmetric(rng, 5)
    u, v = gaussian(), x_gaussian()
    lhs = matrix_function(u * v, t)
    rhs = matrix_function(u, t) @ matrix_function(v, t)
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_parity_covariance_is_exact():
    rep = oscillator_rep(1, 10)
    b = rep.bott  # odd, symmetric
    odd_result = matrix_function(x_gaussian(), b)
    even_result = matrix_function(gaussian(), b)
    assert odd_result.even_part().norm() == 0.0
    assert even_result.odd_part().norm() == 0.0
    # even input: any f lands in the even part
    b2 = b @ b
    assert matrix_function(x_gaussian(), b2).odd_part().norm() == 0.0


def test_scale_composes_with_functional_calculus():
    rng = np.random.default_rng(3)
    t = _random_symmetric(rng, 6)
    f = gaussian()
    lhs = matrix_function(scale(f, 2.5), t)
    rhs = matrix_function(f, t / 2.5)
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_matrix_function_plain_ndarray_roundtrip():
    a = np.diag([1.0, -2.0, 0.5])
    out = matrix_function(gaussian(), a)
    assert isinstance(out, np.ndarray)
    assert np.allclose(np.diag(out), np.exp(-np.diag(a) ** 2))


# ---------------------------------------------------------------------------
# comultiplication
# ---------------------------------------------------------------------------

def test_delta_scalar_identities():
    # scalar shadow of the expansion: the summands of the doubled variable
    # anticommute, so its square is a^2 + b^2 with no cross term, and the
    # Gaussian of that sum factorizes
    u, v = gaussian(), x_gaussian()
    a = np.linspace(-3, 3, 41)[:, None]
    b = np.linspace(-3, 3, 41)[None, :]
    sq = a * a + b * b
    assert np.allclose(np.exp(-sq), u(a) * u(b), atol=1e-14)
    assert np.allclose((a + b) * np.exp(-sq), u(a) * v(b) + v(a) * u(b), atol=1e-14)


def test_delta_on_generators_table():
    table = delta_on_generators()
    assert set(table) == {"u", "v"}
    assert len(table["u"]) == 1 and len(table["v"]) == 2
    (f, g), = table["u"]
    assert f.parity == 0 and g.parity == 0
    parities = {(f.parity, g.parity) for f, g in table["v"]}
    assert parities == {(0, 1), (1, 0)}


@pytest.mark.parametrize("level", [12, 18, 24])
def test_delta_residuals_are_rounding_noise(level):
    cu = delta_via_xr_check(level, "u")
    cv = delta_via_xr_check(level, "v")
    assert cu.residual <= 1e-10, f"u at level {level}: {cu.residual:.3e}"
    assert cv.residual <= 1e-8, f"v at level {level}: {cv.residual:.3e}"
    assert cu.residual == cu.residual_full
    assert cv.residual == cv.residual_interior


def test_delta_effective_radius_grows_with_level():
    radii = [delta_via_xr_check(level, "u").effective_radius for level in (12, 18, 24)]
    assert radii[0] < radii[1] < radii[2]
    assert radii[0] > 3.0


def test_delta_validation():
    with pytest.raises(ValueError):
        delta_via_xr_check(12, "w")
    with pytest.raises(ValueError):
        delta_via_xr_check(3, "u")


def test_graded_function_name_threading():
    u, v = gaussian(), x_gaussian()
    assert "*" in (u * v).name
    assert "@t=" in scale(u, 3.0).name
