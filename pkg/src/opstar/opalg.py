"""Truncated operators on graded sequence spaces.

An operator is a dense square complex array whose column j is the image
of the unit vector e_j.  The module provides the conjugate-transpose
involution, the two-sided weighted operator norms r_{N,n}, sampling
seminorms over finite probe families, the column-weighted scalar product
[x,y]_m = sum_j <x e_j, y e_j> j^{-2m-2}, and the entrywise decay gauges
for rapidly decreasing and tempered matrices.

Operator norms go through full dense SVD; certificates at desk scale are
worth more than iterative speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .seqspace import norm_s


def _as_operator(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("operator must be a square 2-d array")
    return x


def adjoint(x) -> np.ndarray:
    """Conjugate transpose; pairs with the canonical inner product via
    <x xi, eta> = <xi, adjoint(x) eta>."""
    return _as_operator(x).conj().T.copy()


def inner(a, b) -> complex:
    """Canonical pairing, linear in the first slot."""
    return complex(np.vdot(np.asarray(b), np.asarray(a)))


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value by full SVD."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def _poly_weights(dim: int, q: float) -> np.ndarray:
    return np.arange(1, dim + 1, dtype=float) ** q


def r_norm(x, big_n: int, n: int) -> float:
    """Two-sided weighted operator norm.

    Equals the larger of the spectral norms of D_N X D_n^{-1} and of
    D_N X^H D_n^{-1} with D_q = diag(j^q); equivalently the sup over the
    grade-n unit ball of max(|x xi|_N, |x* xi|_N).  Symmetric under the
    involution by construction.
    """
    if big_n < 0 or n < 0:
        raise ValueError("grades must be nonnegative")
    x = _as_operator(x)
    d = x.shape[0]
    w_out = _poly_weights(d, float(big_n))
    w_in = _poly_weights(d, -float(n))
    fwd = (w_out[:, None] * x) * w_in[None, :]
    bwd = (w_out[:, None] * x.conj().T) * w_in[None, :]
    return max(spectral_norm(fwd), spectral_norm(bwd))


@dataclass(frozen=True, eq=False)
class SampleFamily:
    """A labelled finite probe set at fixed dimension."""

    label: str
    probes: tuple

    def __post_init__(self):
        if len(self.probes) == 0:
            raise ValueError("probe family must be nonempty")
        dims = {np.asarray(p).size for p in self.probes}
        if len(dims) != 1:
            raise ValueError("probe family must have uniform dimension")

    @property
    def dim(self) -> int:
        return int(np.asarray(self.probes[0]).size)


def p_seminorm(x, n: int, family: SampleFamily) -> float:
    """max over probes xi of max(|x xi|_n, |x* xi|_n)."""
    x = _as_operator(x)
    if x.shape[0] != family.dim:
        raise ValueError("operator and probe family dimensions differ")
    xh = x.conj().T
    best = 0.0
    for xi in family.probes:
        xi = np.asarray(xi, dtype=complex)
        best = max(best, norm_s(x @ xi, n), norm_s(xh @ xi, n))
    return best


def bracket_m(x, y, m: int) -> complex:
    """sum_j <x e_j, y e_j> j^{-2m-2}.

    Hermitian and positive-definite as a form on operators; the exponent
    -2m-2 (not -2m) is what makes sum j^{-2} = pi^2/6 the controlling
    constant for the associated norm.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = _as_operator(x)
    y = _as_operator(y)
    if x.shape != y.shape:
        raise ValueError("operator dimensions differ")
    d = x.shape[0]
    w = _poly_weights(d, -2.0 * m - 2.0)
    terms = (x * y.conj()).sum(axis=0) * w
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def bracket_norm(x, m: int) -> float:
    """[x]_m = sqrt(bracket_m(x, x))."""
    x = _as_operator(x)
    d = x.shape[0]
    w = _poly_weights(d, -2.0 * m - 2.0)
    terms = (np.abs(x) ** 2).sum(axis=0) * w
    return math.sqrt(math.fsum(terms))


def kinf_gauge(x, n: int) -> float:
    """max_{i,j} |x_ij| (i j)^n; finite-truncation gauge for rapidly
    decreasing matrices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = _as_operator(x)
    d = x.shape[0]
    i = np.arange(1, d + 1, dtype=float)
    ij = np.outer(i, i)
    return float(np.max(np.abs(x) * ij**n))


def kinf_gauge_argmax(x, n: int) -> tuple[float, tuple[int, int]]:
    """Gauge value together with its 1-based (row, col) argmax."""
    x = _as_operator(x)
    d = x.shape[0]
    i = np.arange(1, d + 1, dtype=float)
    vals = np.abs(x) * np.outer(i, i) ** n
    flat = int(np.argmax(vals))
    return float(vals.flat[flat]), (flat // d + 1, flat % d + 1)


def lambdaA_gauge(x, big_n: int, n: int) -> float:
    """sum_{i,j} |x_ij| max(i^N / j^n, j^N / i^n); membership gauge for
    the tempered matrix algebra."""
    if big_n < 0 or n < 0:
        raise ValueError("grades must be nonnegative")
    x = _as_operator(x)
    d = x.shape[0]
    i = np.arange(1, d + 1, dtype=float)
    row = i[:, None]
    col = i[None, :]
    w = np.maximum(row**big_n / col**n, col**big_n / row**n)
    return float(math.fsum((np.abs(x) * w).ravel()))
