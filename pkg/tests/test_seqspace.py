"""Graded-norm tests with independent summation / scan oracles."""

import math

import numpy as np
import pytest

from opstar.seqspace import (
    GradedNormIndex,
    WeightSequence,
    explicit_weights,
    gamma_index,
    graded_norm,
    linear_weights,
    log1p_weights,
    logj_weights,
    norm_lambda,
    norm_s,
    nuclearity_gauge,
    nuclearity_plateau,
    unit_vector,
)

REL = 1e-10


def oracle_weighted_sum(entries, weight):
    """Plain-Python compensated reference: sqrt(sum |x_j|^2 w(j)^2)."""
    return math.sqrt(math.fsum(abs(x) ** 2 * weight(j) ** 2 for j, x in enumerate(entries, start=1)))


# ---------------------------------------------------------------------------
# norm_s


def test_norm_s_unit_vector_single_term():
    assert norm_s(unit_vector(3, 8), 2) == pytest.approx(9.0, rel=1e-14)


def test_norm_s_ones_direct_sum():
    assert norm_s(np.ones(3), 1) == pytest.approx(math.sqrt(14.0), rel=1e-14)


def test_norm_s_inverse_squares_partial_zeta4():
    # independent oracle: fsum of exact terms j^-4; the value is the
    # truncated zeta(4) square root, about 1.0403 at this cutoff
    xi = np.arange(1, 10**4 + 1, dtype=float) ** -2.0
    expected = math.sqrt(math.fsum(float(j) ** -4 for j in range(1, 10**4 + 1)))
    got = norm_s(xi, 0)
    assert got == pytest.approx(expected, rel=1e-13)
    assert got == pytest.approx(1.040347650408653, rel=1e-12)


def test_norm_s_empty_vector_is_zero():
    assert norm_s(np.zeros(0), 3) == 0.0


def test_norm_s_grade_zero_is_euclidean_exactly():
    rng = np.random.default_rng(5)
    x = rng.standard_normal(37) + 1j * rng.standard_normal(37)
    exact = math.sqrt(math.fsum((x.real**2 + x.imag**2).tolist()))
    assert norm_s(x, 0) == exact


def test_norm_s_negative_grade_dual_norms():
    x = np.ones(4)
    assert norm_s(x, -1) == pytest.approx(oracle_weighted_sum(x, lambda j: j**-1.0), rel=REL)


@pytest.mark.parametrize("q,r", [(0, 1), (1, 2), (2, 5), (-3, -1)])
def test_norm_s_monotone_in_grade(q, r):
    rng = np.random.default_rng(17)
    for _ in range(20):
        x = rng.standard_normal(24) + 1j * rng.standard_normal(24)
        assert norm_s(x, q) <= norm_s(x, r) * (1 + 1e-12)


def test_norm_s_interpolation_inequality():
    # Cauchy-Schwarz splits the grade-q weight between grades 0 and 2q
    rng = np.random.default_rng(23)
    for q in (1, 2, 4):
        for _ in range(30):
            x = rng.standard_normal(48) + 1j * rng.standard_normal(48)
            lhs = norm_s(x, q) ** 2
            rhs = norm_s(x, 0) * norm_s(x, 2 * q)
            assert lhs <= rhs * (1 + 1e-12)


# ---------------------------------------------------------------------------
# norm_lambda


def test_norm_lambda_matches_norm_s_for_log_weights():
    rng = np.random.default_rng(3)
    alpha = logj_weights(64)
    for q in (0, 1, 3):
        for _ in range(10):
            x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
            assert norm_lambda(x, alpha, q) == pytest.approx(norm_s(x, q), rel=REL)


def test_norm_lambda_unit_vector_single_weight():
    alpha = linear_weights(10)
    for j in (1, 4, 10):
        for q in (0, 1, 2):
            assert norm_lambda(unit_vector(j, 10), alpha, q) == pytest.approx(
                math.exp(q * float(j)), rel=REL
            )


def test_norm_lambda_geometric_sum():
    # oracle: closed-form geometric series sum_{j<=50} e^{-2j}
    alpha = linear_weights(50)
    xi = np.exp(-2.0 * alpha.values)
    closed = math.sqrt((math.exp(-2) - math.exp(-102)) / (1 - math.exp(-2)))
    got = norm_lambda(xi, alpha, 1)
    assert got == pytest.approx(closed, rel=1e-12)
    assert got == pytest.approx(0.3956231069460752, rel=1e-12)


def test_norm_lambda_monotone_in_grade():
    rng = np.random.default_rng(41)
    alpha = linear_weights(24, 0.2)
    for q, r in ((0, 1), (1, 3)):
        for _ in range(20):
            x = rng.standard_normal(24) + 1j * rng.standard_normal(24)
            assert norm_lambda(x, alpha, q) <= norm_lambda(x, alpha, r) * (1 + 1e-12)


def test_norm_lambda_dimension_mismatch():
    with pytest.raises(ValueError):
        norm_lambda(np.ones(8), linear_weights(4), 1)


def test_norm_lambda_huge_weights_no_spurious_overflow():
    # entries decay faster than the weights grow: finite true value
    alpha = linear_weights(1024)
    xi = np.exp(-3.0 * alpha.values)
    got = norm_lambda(xi, alpha, 1)  # terms e^{-4j}
    closed = math.sqrt(math.exp(-4) / (1 - math.exp(-4)))
    assert got == pytest.approx(closed, rel=1e-12)


def test_norm_lambda_honest_overflow_is_inf():
    alpha = linear_weights(1024)
    assert norm_lambda(unit_vector(1024, 1024), alpha, 2) == math.inf


def test_graded_norm_index_dispatch():
    x = np.ones(6)
    assert graded_norm(x, GradedNormIndex("polynomial", 2)) == pytest.approx(norm_s(x, 2), rel=REL)
    assert graded_norm(x, GradedNormIndex("dual-polynomial", 1)) == pytest.approx(
        norm_s(x, -1), rel=REL
    )
    alpha = linear_weights(6)
    assert graded_norm(x, GradedNormIndex("exponential", 1), alpha) == pytest.approx(
        norm_lambda(x, alpha, 1), rel=REL
    )
    with pytest.raises(ValueError):
        GradedNormIndex("dual-polynomial", -1)


# ---------------------------------------------------------------------------
# weight sequences


def test_weight_sequence_validation():
    with pytest.raises(ValueError):
        explicit_weights([1.0, 0.5])  # not monotone
    with pytest.raises(ValueError):
        explicit_weights([-1.0, 2.0])  # negative
    with pytest.raises(ValueError):
        WeightSequence("explicit", 5, {"values": [1.0, 2.0]})  # too short


def test_weight_sequence_positivity_deviation_flag():
    assert logj_weights(8).positivity_deviation  # log 1 = 0
    assert not log1p_weights(8).positivity_deviation
    assert not linear_weights(8).positivity_deviation


def test_weight_sequence_extension_prefix_consistent():
    a = linear_weights(16, 0.5)
    b = a.extend(64)
    assert np.array_equal(b.values[:16], a.values)
    with pytest.raises(ValueError):
        explicit_weights([1.0, 2.0, 3.0]).extend(10)


def test_weight_sequence_json_round_trip():
    for ws in (linear_weights(12, 2.5), log1p_weights(7), explicit_weights([1.0, 1.5, 9.0])):
        back = WeightSequence.from_json(ws.to_json())
        assert back.kind == ws.kind and back.dim == ws.dim
        assert np.allclose(back.values, ws.values)


# ---------------------------------------------------------------------------
# gauges


def scan_gauge(values):
    # independent plain-loop scan
    best, idx = -math.inf, None
    for j in range(2, len(values) + 1):
        v = math.log(j) / values[j - 1] if values[j - 1] > 0 else math.inf
        if v > best:
            best, idx = v, j
    return best, idx


def test_nuclearity_gauge_linear_weights():
    res = nuclearity_gauge(linear_weights(10**4))
    assert res.value == pytest.approx(math.log(3.0) / 3.0, rel=1e-12)
    assert res.index == 3
    best, idx = scan_gauge(linear_weights(10**4).values)
    assert res.value == pytest.approx(best, rel=1e-12) and res.index == idx


def test_nuclearity_gauge_log1p_increasing_toward_one():
    res = nuclearity_gauge(log1p_weights(10**4))
    assert res.value < 1.0
    smaller = nuclearity_gauge(log1p_weights(100))
    assert smaller.value < res.value


def test_nuclearity_plateau_detection():
    _, _, flat = nuclearity_plateau(linear_weights(10**4))
    assert flat
    _, _, flat = nuclearity_plateau(log1p_weights(10**4))
    assert flat
    slow = explicit_weights(np.sqrt(np.log(np.arange(1, 10**4 + 1) + 1.0)))
    _, _, flat = nuclearity_plateau(slow)
    assert not flat  # gauge grows like sqrt(log d)


def scan_gamma(values):
    worst = max(
        (1.0 + 2.0 * math.log(j)) / values[j - 1] for j in range(1, len(values) + 1)
    )
    return max(math.ceil(worst - 1e-12), 1)


@pytest.mark.parametrize(
    "weights,expected",
    [
        (linear_weights(10**4), 2),  # max ~ 1.193 at j = 2
        (log1p_weights(10**4), 3),  # max ~ 2.355 around j = 6
        (linear_weights(100, 10.0), 1),  # all terms <= 0.12
    ],
)
def test_gamma_index_values(weights, expected):
    assert gamma_index(weights) == expected
    assert gamma_index(weights) == scan_gamma(weights.values)


def test_gamma_index_guarantees_index_bound():
    # e^{gamma a_j} >= j + 1 for all truncation indices
    for ws in (linear_weights(2000), log1p_weights(2000), linear_weights(500, 0.25)):
        g = gamma_index(ws)
        j = np.arange(1, ws.dim + 1, dtype=float)
        assert np.all(g * ws.values >= np.log(j + 1.0) - 1e-12)


def test_gamma_index_rejects_zero_weights():
    with pytest.raises(ValueError):
        gamma_index(logj_weights(100))
