"""Seeded, replayable randomness for probe families.

Every random draw in the library flows through a Philox counter-based
generator keyed by (seed, stream...), and Gaussian variates are produced
by an explicit Box-Muller transform on uniform doubles.  Reports record
``RNG_ALGORITHM`` plus the seed so a probe family can be regenerated from
the report alone.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "philox4x32-10+box-muller"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for a named sub-stream of the master seed.

    Distinct ``stream`` tuples give statistically independent,
    deterministic streams for the same seed.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(seed=ss))


def complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    """n complex Gaussians with E|z|^2 = 1 via Box-Muller on uniforms."""
    u1 = rng.random(n)
    u2 = rng.random(n)
    # log1p(-u1) never sees log(0) since u1 in [0, 1)
    r = np.sqrt(-np.log1p(-u1))
    return r * np.exp(2j * np.pi * u2)


def real_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    u1 = rng.random(n)
    u2 = rng.random(n)
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


DECAY_BETAS = (0.5, 1.0, 2.0)


def decay_probes(rng: np.random.Generator, alpha_values: np.ndarray, count: int) -> list[np.ndarray]:
    """Complex Gaussian vectors damped by exp(-beta * alpha_j).

    The damping exponent cycles through DECAY_BETAS and each probe gets a
    random overall scale spanning four decades, so scale invariance of the
    downstream ratios is exercised for free.
    """
    d = len(alpha_values)
    out = []
    for i in range(count):
        beta = DECAY_BETAS[i % len(DECAY_BETAS)]
        g = complex_gaussian(rng, d)
        scale = 10.0 ** (rng.random() * 4.0 - 2.0)
        out.append(scale * g * np.exp(-beta * alpha_values))
    return out


def unit_probes(dim: int, count: int | None = None) -> list[np.ndarray]:
    """The first ``count`` coordinate unit vectors (all of them by default)."""
    k = dim if count is None else min(count, dim)
    out = []
    for j in range(k):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1.0
        out.append(e)
    return out


def unit_extension_probes(
    rng: np.random.Generator, alpha_values: np.ndarray, count: int
) -> list[tuple[np.ndarray, complex]]:
    """(x, lambda) pairs with rapidly decaying x.

    Seven probe kinds cycle: three damped-Gaussian kinds (one per decay
    exponent), a lambda = 0 kind, a cancellation kind with
    x_j = -lambda exp(-beta alpha_j) that populates the regime where
    x_j + lambda nearly vanishes on an initial segment, a coordinate
    unit-vector kind (compact support keeps its ratio moderate at every
    dimension), and a pure-unit kind with x = 0.
    """
    d = len(alpha_values)
    out = []
    for i in range(count):
        beta = DECAY_BETAS[i % len(DECAY_BETAS)]
        kind = i % 7
        g = complex_gaussian(rng, d)
        lam = complex(complex_gaussian(rng, 1)[0])
        x = g * np.exp(-beta * alpha_values)
        if kind == 3:
            lam = 0.0 + 0.0j
        elif kind == 4:
            x = -lam * np.exp(-beta * alpha_values)
        elif kind == 5:
            x = np.zeros(d, dtype=complex)
            x[i % min(d, 8)] = g[0]
        elif kind == 6:
            x = np.zeros(d, dtype=complex)
            lam = 1.0 + 0.0j
        out.append((x, lam))
    return out


def normal_operator(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random normal matrix: unitary conjugate of a complex diagonal."""
    g = complex_gaussian(rng, dim * dim).reshape(dim, dim)
    q, r = np.linalg.qr(g)
    # fix the phase ambiguity of QR so the draw is deterministic in the seed
    q = q * np.sign(np.where(np.abs(np.diag(r)) > 0, np.diag(r), 1.0))
    lam = complex_gaussian(rng, dim)
    return (q * lam) @ q.conj().T


def decay_matrix_probes(
    rng: np.random.Generator, dim: int, count: int
) -> list[tuple[np.ndarray, complex]]:
    """(x, lambda) pairs where x has entries damped by (i*j)^(-beta),
    interleaved with single matrix units (the off-diagonal chain is tight
    on those) and some lambda = 0 draws."""
    i = np.arange(1, dim + 1, dtype=float)
    ij = np.outer(i, i)
    out = []
    betas = (2.0, 3.0, 4.0)
    for k in range(count):
        beta = betas[k % len(betas)]
        g = complex_gaussian(rng, dim * dim).reshape(dim, dim)
        lam = complex(complex_gaussian(rng, 1)[0])
        kind = k % 5
        x = g * ij ** (-beta)
        if kind == 3:
            lam = 0.0 + 0.0j
        elif kind == 4:
            x = np.zeros((dim, dim), dtype=complex)
            row = k % min(dim, 6)
            col = (k + 1) % min(dim, 6)
            x[row, col] = g[0, 0]
            if k % 2 == 0:
                lam = 0.0 + 0.0j
        out.append((x, lam))
    return out
