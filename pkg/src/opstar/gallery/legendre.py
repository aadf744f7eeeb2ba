"""Orthonormal Legendre polynomials and the degree-linear sup/L2 bound.

Values come from the stable three-term recurrence; quadrature nodes and
weights come from numpy's Gauss-Legendre rule at twice the polynomial
exactness actually needed, so orthonormality can be certified rather
than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def gauss_legendre(num_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    return np.polynomial.legendre.leggauss(num_nodes)


def legendre_eval(k: int, x) -> np.ndarray | float:
    """Orthonormalized Legendre value: sqrt((2k+1)/2) P_k(x).

    |result| <= sqrt((2k+1)/2) on [-1, 1]; under the L2 pairing on the
    interval these are orthonormal.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if k == 0:
        out = math.sqrt(0.5) * p_prev
        return float(out) if scalar else out
    p_cur = x.copy()
    for n in range(1, k):
        p_prev, p_cur = p_cur, ((2 * n + 1) * x * p_cur - n * p_prev) / (n + 1)
    out = math.sqrt((2 * k + 1) / 2.0) * p_cur
    return float(out) if scalar else out


def legendre_table(max_degree: int, x: np.ndarray) -> np.ndarray:
    """Rows 0..max_degree of normalized Legendre values at x."""
    x = np.asarray(x, dtype=float)
    table = np.empty((max_degree + 1, x.size))
    p_prev = np.ones_like(x)
    table[0] = math.sqrt(0.5) * p_prev
    if max_degree == 0:
        return table
    p_cur = x.copy()
    table[1] = math.sqrt(1.5) * p_cur
    for n in range(1, max_degree):
        p_prev, p_cur = p_cur, ((2 * n + 1) * x * p_cur - n * p_prev) / (n + 1)
        table[n + 1] = math.sqrt((2 * (n + 1) + 1) / 2.0) * p_cur
    return table


SUP_GRID = 4097  # Chebyshev-distributed, includes both endpoints


def _interval_grid(m: int = SUP_GRID) -> np.ndarray:
    return np.cos(np.pi * np.arange(m) / (m - 1))


@dataclass(frozen=True)
class NikolskiiResult:
    degree: int
    sup_norm: float
    l2_norm: float
    bound: float  # (degree + 1) * l2_norm
    slack: float  # bound - sup_norm

    @property
    def holds(self) -> bool:
        return self.slack >= -1e-9 * max(self.bound, 1.0)


def nikolskii_check(coeffs, basis: str = "monomial") -> NikolskiiResult:
    """Sup norm on a dense grid vs (n+1) times the quadrature L2 norm.

    ``basis`` selects how the coefficients are read: monomial (ascending
    powers) or normalized-Legendre.
    """
    c = np.asarray(coeffs, dtype=complex)
    degree = c.size - 1
    if degree < 0:
        raise ValueError("empty coefficient list")
    grid = _interval_grid()
    if basis == "monomial":
        vals = np.polynomial.polynomial.polyval(grid, c)
        nodes, weights = gauss_legendre(2 * (degree + 1))
        node_vals = np.polynomial.polynomial.polyval(nodes, c)
    elif basis == "legendre":
        table = legendre_table(degree, grid)
        vals = c @ table
        nodes, weights = gauss_legendre(2 * (degree + 1))
        node_vals = c @ legendre_table(degree, nodes)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    sup = float(np.max(np.abs(vals)))
    l2 = math.sqrt(max(float(np.sum(weights * np.abs(node_vals) ** 2)), 0.0))
    bound = (degree + 1) * l2
    return NikolskiiResult(degree, sup, l2, bound, bound - sup)


def nikolskii_extremal_witness(degree: int) -> np.ndarray:
    """Normalized-Legendre coefficients of the endpoint kernel
    sum_k Q_k(1) Q_k(x).

    Its sup/L2 ratio is (degree+1)/sqrt(2), within a factor sqrt(2) of
    the (degree+1) bound; a single basis polynomial is far from extremal.
    """
    k = np.arange(degree + 1, dtype=float)
    return np.sqrt((2 * k + 1) / 2.0).astype(complex)


def recurrence_residual(max_degree: int, x: np.ndarray) -> float:
    """max |(k+1) P_{k+1} - (2k+1) x P_k + k P_{k-1}| over the grid for
    k = 1..max_degree-1, on the unnormalized polynomials."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    p_cur = x.copy()
    worst = 0.0
    for k in range(1, max_degree):
        p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
        res = np.abs((k + 1) * p_next - (2 * k + 1) * x * p_cur + k * p_prev)
        worst = max(worst, float(np.max(res)))
        p_prev, p_cur = p_cur, p_next
    return worst
