"""Legendre basis and sup/L2 bound tests with quadrature oracles."""

import math

import numpy as np
import pytest

from opstar.gallery import (
    gauss_legendre,
    legendre_eval,
    nikolskii_check,
    nikolskii_extremal_witness,
)
from opstar.gallery.legendre import legendre_table, recurrence_residual


def test_degree_zero_constant():
    xs = np.linspace(-1, 1, 7)
    assert np.allclose(legendre_eval(0, xs), 1.0 / math.sqrt(2.0), rtol=1e-14)


def test_degree_one_at_endpoint():
    assert legendre_eval(1, 1.0) == pytest.approx(math.sqrt(1.5), rel=1e-14)
    assert legendre_eval(1, -0.4) == pytest.approx(-0.4 * math.sqrt(1.5), rel=1e-13)


def test_orthonormality_via_quadrature():
    # independent quadrature oracle at doubled exactness
    kmax = 30
    nodes, weights = gauss_legendre(2 * (kmax + 1))
    table = legendre_table(kmax, nodes)
    gram = (table * weights) @ table.T
    assert float(np.max(np.abs(gram - np.eye(kmax + 1)))) <= 1e-12


def test_pointwise_bound():
    xs = np.cos(np.pi * np.arange(2001) / 2000)
    for k in (0, 3, 12, 30):
        bound = math.sqrt((2 * k + 1) / 2.0)
        assert float(np.max(np.abs(legendre_eval(k, xs)))) <= bound * (1 + 1e-12)
        # the endpoint attains it
        assert abs(legendre_eval(k, 1.0)) == pytest.approx(bound, rel=1e-12)


def test_recurrence_residual_through_degree_50():
    xs = np.linspace(-1.0, 1.0, 1501)
    assert recurrence_residual(50, xs) <= 1e-12


def test_nikolskii_constant_polynomial():
    res = nikolskii_check(np.array([1.0]))
    assert res.sup_norm == pytest.approx(1.0, rel=1e-12)
    assert res.l2_norm == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert res.holds and res.slack > 0


def test_nikolskii_single_basis_polynomial():
    # sup = sqrt((2n+1)/2) and unit L2 norm; far from the (n+1) bound
    for n in (5, 14):
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = 1.0
        res = nikolskii_check(coeffs, basis="legendre")
        assert res.l2_norm == pytest.approx(1.0, rel=1e-10)
        assert res.sup_norm == pytest.approx(math.sqrt((2 * n + 1) / 2.0), rel=1e-10)
        assert res.holds


def test_nikolskii_random_polynomials_hold():
    rng = np.random.default_rng(31)
    for _ in range(200):
        degree = int(rng.integers(0, 31))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        assert nikolskii_check(coeffs).holds


def test_nikolskii_extremal_witness_within_sqrt2():
    # endpoint kernel: sup = (n+1)^2/2 at x = 1, L2 = (n+1)/sqrt(2),
    # so the (n+1) bound is attained up to the factor sqrt(2)
    for n in (3, 10, 30):
        res = nikolskii_check(nikolskii_extremal_witness(n), basis="legendre")
        assert res.sup_norm == pytest.approx((n + 1) ** 2 / 2.0, rel=1e-10)
        assert res.l2_norm == pytest.approx((n + 1) / math.sqrt(2.0), rel=1e-10)
        factor = res.bound / res.sup_norm
        assert factor == pytest.approx(math.sqrt(2.0), rel=1e-10)
        assert factor <= 2.0
