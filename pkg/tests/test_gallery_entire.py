"""Confocal-ellipse sup norms, the three-circle inequality, and the
Taylor tail bound on polynomial samples."""

import numpy as np
import pytest

from opstar.gallery import (
    ellipse_boundary,
    hadamard_check,
    joukowski_ellipse,
    joukowski_point,
    sup_on_circle,
    sup_on_ellipse,
    sup_on_interval,
    taylor_tail_bound,
)


def test_joukowski_semi_axes():
    a, b = joukowski_ellipse(2.0)
    assert (a, b) == (1.25, 0.75)
    with pytest.raises(ValueError):
        joukowski_ellipse(1.0)
    with pytest.raises(ValueError):
        joukowski_ellipse(0.5)


def test_joukowski_degenerates_to_interval():
    a, b = joukowski_ellipse(1.0 + 1e-9)
    assert a == pytest.approx(1.0, abs=1e-8)
    assert b == pytest.approx(0.0, abs=1e-8)


def test_joukowski_r_and_inverse_r_same_curve():
    # the map identifies the circles of radius r and 1/r pointwise under
    # theta -> -theta
    r = 1.7
    theta = np.linspace(0, 2 * np.pi, 41)
    outer = joukowski_point(r * np.exp(1j * theta))
    inner = joukowski_point((1.0 / r) * np.exp(-1j * theta))
    assert np.max(np.abs(outer - inner)) <= 1e-12


def test_ellipse_boundary_on_curve():
    r = 1.5
    a, b = joukowski_ellipse(r)
    pts = ellipse_boundary(r, 256)
    assert np.max(np.abs((pts.real / a) ** 2 + (pts.imag / b) ** 2 - 1.0)) <= 1e-12


def test_sup_norms_of_linear_polynomial():
    z = np.array([0.0, 1.0])
    assert sup_on_ellipse(z, 2.0) == pytest.approx(1.25, rel=1e-12)
    assert sup_on_interval(z) == pytest.approx(1.0, rel=1e-12)
    assert sup_on_circle(z, 3.0) == pytest.approx(3.0, rel=1e-12)


def test_hadamard_constant_is_equality():
    res = hadamard_check(np.array([2.5]), 1.5)
    assert res.norm_ellipse_r == pytest.approx(2.5, rel=1e-12)
    assert res.slack == pytest.approx(2.5 * 2.5 - 2.5**2, abs=1e-9)
    assert res.holds


def test_hadamard_linear_frozen_values():
    res = hadamard_check(np.array([0.0, 1.0]), 2.0)
    assert res.norm_ellipse_r == pytest.approx(1.25, rel=1e-12)
    assert res.norm_interval == pytest.approx(1.0, rel=1e-12)
    assert res.norm_ellipse_r2 == pytest.approx(2.125, rel=1e-12)
    assert res.slack == pytest.approx(2.125 - 1.5625, rel=1e-9)


def test_hadamard_random_samples_hold():
    rng = np.random.default_rng(17)
    for _ in range(40):
        degree = int(rng.integers(0, 11))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        for r in (1.2, 1.5, 2.0):
            res = hadamard_check(coeffs, r)
            scale = max(1.0, res.norm_interval * res.norm_ellipse_r2)
            assert res.slack >= -1e-8 * scale


def test_refinement_certifies_resolution():
    # a hard case: high degree concentrates mass near the endpoints
    coeffs = np.zeros(41)
    coeffs[40] = 1.0
    # ellipse sup of z^40 is a^40 at the real axis crossing
    a, _ = joukowski_ellipse(1.2)
    assert sup_on_ellipse(coeffs, 1.2) == pytest.approx(a**40, rel=1e-7)


def test_taylor_tail_vanishes_for_exact_truncation():
    coeffs = np.array([1.0, 2.0, 3.0, 0.0, 0.0])
    lhs, rhs = taylor_tail_bound(coeffs, 3)
    assert lhs == 0.0 and rhs > 0.0


def test_taylor_tail_pure_power():
    for n in (2, 5, 9):
        coeffs = np.zeros(n + 2)
        coeffs[n + 1] = 1.0
        lhs, rhs = taylor_tail_bound(coeffs, n)
        assert lhs == pytest.approx(1.0, rel=1e-12)
        assert rhs == pytest.approx(3.0 ** (n + 1) / 2.0 ** (n + 1), rel=1e-12)
        assert lhs <= rhs


def test_taylor_tail_random_samples_hold():
    rng = np.random.default_rng(23)
    for _ in range(30):
        coeffs = rng.standard_normal(21) + 1j * rng.standard_normal(21)
        for n in range(5, 16):
            lhs, rhs = taylor_tail_bound(coeffs, n)
            assert lhs <= rhs + 1e-8 * max(1.0, rhs)


def test_taylor_tail_order_validation():
    with pytest.raises(ValueError):
        taylor_tail_bound(np.ones(4), 5)
