"""Sup norms of polynomial samples of entire functions on confocal
ellipses, intervals and circles, with the three-circle and Taylor-tail
inequalities they satisfy.

The map z -> (z + 1/z)/2 sends the circle of radius r > 1 to the ellipse
with semi-axes ((r + 1/r)/2, (r - 1/r)/2) and foci at +-1; sup norms over
these curves are sampled on dense boundary grids that certify their own
resolution by doubling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BOUNDARY_GRID = 4096
REFINE_TOL = 1e-8  # doubling the grid must move the sup by less than this
MAX_REFINE = 4


def joukowski_point(z):
    """(z + 1/z)/2; symmetric under z -> 1/z."""
    z = np.asarray(z, dtype=complex)
    return 0.5 * (z + 1.0 / z)


def joukowski_ellipse(r: float) -> tuple[float, float]:
    """Semi-axes (a, b) of the image of the radius-r circle; needs r > 1."""
    if r <= 1.0:
        raise ValueError("ellipse parameter must exceed 1")
    return 0.5 * (r + 1.0 / r), 0.5 * (r - 1.0 / r)


def ellipse_boundary(r: float, num: int = BOUNDARY_GRID) -> np.ndarray:
    """Boundary samples of the confocal ellipse with parameter r."""
    theta = 2.0 * np.pi * np.arange(num) / num
    return joukowski_point(r * np.exp(1j * theta))


def _poly_on(points: np.ndarray, coeffs) -> np.ndarray:
    return np.polynomial.polynomial.polyval(points, np.asarray(coeffs, dtype=complex))


def _refined_sup(point_factory, coeffs) -> float:
    """max |p| over point_factory(m), doubling m until stable."""
    m = BOUNDARY_GRID
    sup = float(np.max(np.abs(_poly_on(point_factory(m), coeffs))))
    for _ in range(MAX_REFINE):
        m *= 2
        finer = float(np.max(np.abs(_poly_on(point_factory(m), coeffs))))
        if abs(finer - sup) <= REFINE_TOL * max(1.0, abs(finer)):
            return finer
        sup = finer
    return sup


def sup_on_ellipse(coeffs, r: float) -> float:
    return _refined_sup(lambda m: ellipse_boundary(r, m), coeffs)


def sup_on_interval(coeffs) -> float:
    """Sup over [-1, 1] on a Chebyshev-distributed grid with endpoints."""

    def grid(m):
        return np.cos(np.pi * np.arange(m + 1) / m)

    return _refined_sup(grid, coeffs)


def sup_on_circle(coeffs, radius: float) -> float:
    """Sup over the closed disc of the given radius; by the maximum
    principle the boundary grid suffices."""

    def grid(m):
        theta = 2.0 * np.pi * np.arange(m) / m
        return radius * np.exp(1j * theta)

    return _refined_sup(grid, coeffs)


@dataclass(frozen=True)
class HadamardResult:
    r: float
    norm_ellipse_r: float
    norm_interval: float
    norm_ellipse_r2: float
    slack: float  # product - square, >= 0 up to sampling error

    @property
    def holds(self) -> bool:
        return self.slack >= -1e-9 * max(1.0, self.norm_ellipse_r**2)


def hadamard_check(coeffs, r: float) -> HadamardResult:
    """||p||_{E_r}^2 <= ||p||_{[-1,1]} ||p||_{E_{r^2}} via boundary grids."""
    if r <= 1.0:
        raise ValueError("requires r > 1")
    n_r = sup_on_ellipse(coeffs, r)
    n_i = sup_on_interval(coeffs)
    n_r2 = sup_on_ellipse(coeffs, r * r)
    return HadamardResult(r, n_r, n_i, n_r2, n_i * n_r2 - n_r**2)


def taylor_tail_bound(coeffs, n: int) -> tuple[float, float]:
    """(sup over [-1,1] of |p - p_n|, 2^-(n+1) sup over |z| <= 3 of |p|).

    p_n is the degree-n truncation; the left side never exceeds the right
    for any polynomial sample.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if n >= coeffs.size:
        raise ValueError("truncation order must be below the degree cap")
    tail = coeffs.copy()
    tail[: n + 1] = 0.0
    lhs = sup_on_interval(tail)
    rhs = sup_on_circle(coeffs, 3.0) / 2.0 ** (n + 1)
    return lhs, rhs
