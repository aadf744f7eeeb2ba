"""Smooth compactly supported bumps and their derivative-norm
interpolation.

The standard bump exp(-1/(1-x^2)) has k-th derivative b(x) P_k(x) /
(1-x^2)^{2k} with polynomial P_k obeying the recursion

    P_{k+1} = (P_k' (1-x^2) + 4k x P_k)(1-x^2) - 2x P_k,

so derivatives of any order are available in closed form and evaluated
through logarithms to dodge the 0 * inf indeterminacy at the support
edge.  Because all derivatives vanish at the boundary, each squared
derivative L2 norm integrates by parts onto the function itself, which
bounds the order-m Sobolev-style square by (m+1) times
||f + lambda|| ||f + lambda||_{2m}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

INTEGRATION_TOL = 1e-10


@lru_cache(maxsize=None)
def _derivative_polys(order: int) -> tuple:
    polys = [np.array([1.0])]
    for k in range(order):
        p = polys[-1]
        dp = p[1:] * np.arange(1, len(p)) if len(p) > 1 else np.zeros(1)
        one_minus = np.array([1.0, 0.0, -1.0])  # 1 - x^2, ascending
        t1 = np.polynomial.polynomial.polymul(np.polynomial.polynomial.polymul(dp, one_minus), one_minus)
        t2 = 4.0 * k * np.polynomial.polynomial.polymul(np.polynomial.polynomial.polymul([0.0, 1.0], p), one_minus)
        t3 = -2.0 * np.polynomial.polynomial.polymul([0.0, 1.0], p)
        size = max(len(t1), len(t2), len(t3))
        nxt = np.zeros(size)
        nxt[: len(t1)] += t1
        nxt[: len(t2)] += t2
        nxt[: len(t3)] += t3
        polys.append(nxt)
    return tuple(polys)


@dataclass(frozen=True)
class BumpFunction:
    """exp(-1/(1 - (x/scale)^2)) supported on [-scale, scale]."""

    scale: float = 1.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def derivative(self, k: int, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        u = x / self.scale
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        if np.any(inside):
            ui = u[inside]
            poly = _derivative_polys(k)[k]
            pv = np.polynomial.polynomial.polyval(ui, poly)
            log_mag = (
                -1.0 / (1.0 - ui**2)
                - 2.0 * k * np.log1p(-(ui**2))
                + np.log(np.maximum(np.abs(pv), 1e-300))
            )
            vals = np.sign(pv) * np.exp(np.clip(log_mag, -745.0, 700.0))
            vals[np.abs(pv) == 0.0] = 0.0
            out[inside] = vals / self.scale**k
        return out

    def __call__(self, x) -> np.ndarray:
        return self.derivative(0, x)

    def dilate(self, factor: float) -> "BumpFunction":
        return BumpFunction(self.scale * factor)


def standard_bump() -> BumpFunction:
    return BumpFunction(1.0)


def adaptive_gauss(f, a: float, b: float, tol: float = INTEGRATION_TOL) -> float:
    """Panel-doubled 20-node Gauss quadrature to absolute tolerance."""
    nodes, weights = np.polynomial.legendre.leggauss(20)
    panels = 4
    prev = None
    for _ in range(14):
        edges = np.linspace(a, b, panels + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            total += half * float(np.sum(weights * f(mid + half * nodes)))
        if prev is not None and abs(total - prev) <= tol:
            return total
        prev = total
        panels *= 2
    return prev


@dataclass(frozen=True)
class BumpDnResult:
    order: int
    scale: float
    lam: float
    sobolev_sq: float  # sum of squared derivative L2 norms up to order m
    norm0: float  # plain L2 norm of f + lambda
    norm_2m: float  # order-2m Sobolev-style norm
    constant: float  # sobolev_sq / (norm0 * norm_2m)

    @property
    def holds(self) -> bool:
        return self.constant <= (self.order + 1) * (1 + 1e-9)


def bump_dn_check(
    bump: BumpFunction,
    order: int,
    lam: float = 0.0,
    interval: tuple[float, float] = (-1.0, 1.0),
) -> BumpDnResult:
    """Interpolation constant for one bump sample on the interval.

    Needs derivatives up to 2*order; the interval must contain the
    support so the boundary terms of the by-parts identity vanish.
    """
    a, b = interval
    if not (a < -bump.scale and bump.scale < b) and not (a <= -bump.scale and bump.scale <= b):
        raise ValueError("interval must contain the support")

    def l2sq(k: int) -> float:
        if k == 0:
            return adaptive_gauss(lambda x: np.abs(bump(x) + lam) ** 2, a, b)
        return adaptive_gauss(lambda x: bump.derivative(k, x) ** 2, a, b)

    sob = math.fsum(l2sq(k) for k in range(order + 1))
    norm0 = math.sqrt(l2sq(0))
    norm_2m = math.sqrt(math.fsum(l2sq(k) for k in range(2 * order + 1)))
    constant = sob / (norm0 * norm_2m) if norm0 * norm_2m > 0 else math.inf
    return BumpDnResult(order, bump.scale, lam, sob, norm0, norm_2m, constant)
