"""Flat-torus Laplacian spectra and the grid Fourier algebra.

Eigenvalues on the n-torus are the squared lattice norms |m|^2 over Z^n,
each with its lattice multiplicity, so the spectrum is produced by exact
shell enumeration and the Weyl-law ratio lambda_k k^(-2/n) can be checked
against recorded bands without any PDE machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dnlab import GradedSpace
from .._rng import complex_gaussian, unit_probes

# observed lambda_k * k^(-2/n) envelopes for 100 <= k <= 10^4, with margin
WEYL_BANDS = {1: (0.240, 0.255), 2: (0.290, 0.345)}


@dataclass(frozen=True, eq=False)
class TorusSpectrum:
    """Sorted eigenvalue list with shell multiplicities."""

    torus_dim: int
    eigenvalues: np.ndarray  # sorted, lambda_1 = 0
    shells: dict  # eigenvalue -> lattice multiplicity

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues)
        if ev[0] != 0:
            raise ValueError("spectrum must start at 0")
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be sorted")

    @property
    def count(self) -> int:
        return len(self.eigenvalues)


def torus_spectrum(torus_dim: int, count: int) -> TorusSpectrum:
    """First ``count`` eigenvalues |m|^2, m in Z^n, with multiplicity."""
    if torus_dim not in (1, 2, 3):
        raise ValueError("torus dimension must be 1, 2 or 3")
    if count < 1:
        raise ValueError("count must be positive")

    # grow the enumeration radius until the closed ball holds enough points
    radius_sq = 4
    while True:
        shells = _lattice_shells(torus_dim, radius_sq)
        total = sum(shells.values())
        if total >= count:
            break
        radius_sq *= 2

    eigenvalues = np.empty(count, dtype=np.int64)
    filled = 0
    for val in sorted(shells):
        take = min(shells[val], count - filled)
        eigenvalues[filled : filled + take] = val
        filled += take
        if filled == count:
            break
    kept = {v: m for v, m in shells.items() if v <= int(eigenvalues[-1])}
    return TorusSpectrum(torus_dim, eigenvalues, kept)


def _lattice_shells(n: int, radius_sq: int) -> dict:
    r = math.isqrt(radius_sq)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    if n == 1:
        sq = axis**2
    elif n == 2:
        sq = (axis[:, None] ** 2 + axis[None, :] ** 2).ravel()
    else:
        sq = (
            axis[:, None, None] ** 2 + axis[None, :, None] ** 2 + axis[None, None, :] ** 2
        ).ravel()
    sq = sq[sq <= radius_sq]
    vals, counts = np.unique(sq, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def weyl_ratios(spectrum: TorusSpectrum, k_min: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """(k, lambda_k k^(-2/n)) for k >= k_min."""
    k = np.arange(1, spectrum.count + 1, dtype=float)
    ratios = spectrum.eigenvalues / k ** (2.0 / spectrum.torus_dim)
    mask = k >= k_min
    return k[mask].astype(int), ratios[mask]


def fourier_sobolev_coeffs(coeffs, spectrum: TorusSpectrum, r: int):
    """Entrywise a_k (1 + lambda_k)^r; the grade-r coefficient weighting."""
    a = np.asarray(coeffs, dtype=complex)
    if a.size != spectrum.count:
        raise ValueError("coefficient list and spectrum length differ")
    lam = spectrum.eigenvalues.astype(float)
    return a * (1.0 + lam) ** r


def torus_space(torus_dim: int) -> GradedSpace:
    """Graded space of eigenbasis coefficients: grade r weights a_k by
    (1 + lambda_k)^r, the candidate dominating norm is the plain
    coefficient Euclidean norm."""

    cache: dict[int, np.ndarray] = {}

    def lam(dim: int) -> np.ndarray:
        if dim not in cache:
            cache[dim] = torus_spectrum(torus_dim, dim).eigenvalues.astype(float)
        return cache[dim]

    def norm0(a) -> float:
        a = np.asarray(a, dtype=complex)
        return math.sqrt(math.fsum((np.abs(a) ** 2).tolist()))

    def graded(a, r: int) -> float:
        a = np.asarray(a, dtype=complex)
        w = (1.0 + lam(a.size)) ** r
        return math.sqrt(math.fsum((np.abs(a) ** 2 * w**2).tolist()))

    def probes(dim, rng, count):
        fam = unit_probes(dim, min(dim, 16))
        decay = (1.0 + lam(dim)) ** -2
        for _ in range(max(count - len(fam), 0)):
            fam.append(complex_gaussian(rng, dim) * decay)
        return fam

    return GradedSpace(
        label=f"torus{torus_dim}", norm0=norm0, graded=graded, probes=probes
    )
