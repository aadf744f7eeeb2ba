"""Torus spectrum tests against an independent lattice-enumeration
oracle, plus the grid Fourier algebra identities."""

import math

import numpy as np
import pytest

from opstar.dnlab import DnProbe, VERDICT_BOUNDED, certify_dn
from opstar.gallery import (
    WEYL_BANDS,
    fourier_sobolev_coeffs,
    torus_space,
    torus_spectrum,
    weyl_ratios,
)
from opstar.staralg import GramForm, check_alpha, convolution_algebra


def oracle_eigs(n, count):
    """Triple-loop lattice enumeration, no numpy."""
    r2 = 4
    while True:
        vals = []
        r = math.isqrt(r2)
        rng = range(-r, r + 1)
        if n == 1:
            vals = [m * m for m in rng if m * m <= r2]
        elif n == 2:
            vals = [a * a + b * b for a in rng for b in rng if a * a + b * b <= r2]
        else:
            vals = [
                a * a + b * b + c * c
                for a in rng
                for b in rng
                for c in rng
                if a * a + b * b + c * c <= r2
            ]
        if len(vals) >= count:
            return sorted(vals)[:count]
        r2 *= 2


def test_spectrum_line_first_seven():
    assert torus_spectrum(1, 7).eigenvalues.tolist() == [0, 1, 1, 4, 4, 9, 9]


def test_spectrum_plane_first_five():
    assert torus_spectrum(2, 5).eigenvalues.tolist() == [0, 1, 1, 1, 1]


@pytest.mark.parametrize("n,count", [(1, 200), (2, 300), (3, 150)])
def test_spectrum_matches_enumeration_oracle(n, count):
    assert torus_spectrum(n, count).eigenvalues.tolist() == oracle_eigs(n, count)


def test_spectrum_multiplicities_match_shell_counts():
    spec = torus_spectrum(2, 100)
    # independent shell counts: r2(v) by direct two-square search
    for v, mult in list(spec.shells.items())[:12]:
        count = 0
        r = math.isqrt(v)
        for a in range(-r, r + 1):
            rem = v - a * a
            b = math.isqrt(rem)
            if b * b == rem:
                count += 1 if b == 0 else 2
        assert mult == count


def test_spectrum_validation():
    with pytest.raises(ValueError):
        torus_spectrum(4, 5)
    with pytest.raises(ValueError):
        torus_spectrum(1, 0)


def test_weyl_band_line():
    spec = torus_spectrum(1, 10**4)
    ks, ratios = weyl_ratios(spec)
    lo, hi = WEYL_BANDS[1]
    assert float(np.min(ratios)) >= lo and float(np.max(ratios)) <= hi
    # the even-index eigenvalues give the exact envelope (k/2)^2 / k^2
    assert float(np.max(ratios)) == pytest.approx(0.25, abs=1e-12)


def test_weyl_band_plane():
    spec = torus_spectrum(2, 10**4)
    _, ratios = weyl_ratios(spec)
    lo, hi = WEYL_BANDS[2]
    assert float(np.min(ratios)) >= lo and float(np.max(ratios)) <= hi
    assert float(np.max(ratios)) / float(np.min(ratios)) < 4.0


# ---------------------------------------------------------------------------
# coefficient weighting


def test_sobolev_coeffs_identity_at_grade_zero():
    spec = torus_spectrum(1, 9)
    a = np.arange(1.0, 10.0) + 0.5j
    assert np.array_equal(fourier_sobolev_coeffs(a, spec, 0), a)


def test_sobolev_coeffs_constant_function_unchanged():
    spec = torus_spectrum(2, 8)
    e1 = np.zeros(8, dtype=complex)
    e1[0] = 3.0
    assert np.array_equal(fourier_sobolev_coeffs(e1, spec, 5), e1)


def test_sobolev_coeffs_closed_form_line():
    # on the line the k-th eigenvalue is ceil((k-1)/2)^2
    spec = torus_spectrum(1, 64)
    rng = np.random.default_rng(2)
    a = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    got = fourier_sobolev_coeffs(a, spec, 2)
    lam = np.array([math.ceil((k - 1) / 2) ** 2 for k in range(1, 65)], dtype=float)
    assert np.allclose(got, a * (1.0 + lam) ** 2, rtol=1e-12)


def test_sobolev_length_mismatch():
    with pytest.raises(ValueError):
        fourier_sobolev_coeffs(np.ones(5), torus_spectrum(1, 6), 1)


def test_torus_space_certifies_interpolation():
    for n in (1, 2):
        cert = certify_dn(
            DnProbe(torus_space(n), 1, (2,), (32, 64, 128), probe_count=48, seed=9)
        )
        assert cert.verdict == VERDICT_BOUNDED
        assert cert.max_constant() <= 1.0 + 1e-10


# ---------------------------------------------------------------------------
# the grid Fourier algebra


def test_pointwise_product_is_wrapped_convolution():
    # sampling trig polynomials on the (2K+1)-point grid: multiply values
    # pointwise, compare with the algebra's structure-constant product
    K = 3
    m = 2 * K + 1
    alg = convolution_algebra(K)
    rng = np.random.default_rng(5)
    a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    freqs = np.arange(-K, K + 1)
    theta = 2.0 * np.pi * np.arange(m) / m
    basis = np.exp(1j * np.outer(freqs, theta))  # rows e^{i f theta_g}
    values = (a @ basis) * (b @ basis)
    prod = alg.product(a, b)
    assert np.max(np.abs(prod @ basis - values)) <= 1e-11


def test_convolution_involution_is_function_conjugation():
    K = 2
    m = 2 * K + 1
    alg = convolution_algebra(K)
    rng = np.random.default_rng(6)
    a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    freqs = np.arange(-K, K + 1)
    theta = 2.0 * np.pi * np.arange(m) / m
    basis = np.exp(1j * np.outer(freqs, theta))
    assert np.max(np.abs(alg.star(a) @ basis - np.conj(a @ basis))) <= 1e-12


def test_convolution_algebra_alpha_exact_with_plain_inner_product():
    for K in (1, 2, 3):
        alg = convolution_algebra(K)
        assert check_alpha(alg, GramForm(np.eye(2 * K + 1))) <= 1e-13
