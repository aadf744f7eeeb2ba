"""Dominating-norm probing engine.

A candidate dominating norm ||.|| for a graded family (||.||_q)_q is
probed through the ratio

    ||x||_q^2 / (||x|| ||x||_r)

over seeded probe families.  ``certify_dn`` sweeps a dimension grid,
records the best (largest) observed constant per partner grade r, fits
the growth of that constant against dimension on a log-log scale, and
issues a verdict:

    certified-bounded   some r keeps the fitted exponent <= 0.05
    falsified-growing   every r shows exponent >= 0.5
    inconclusive        anything in between, or a degenerate family

The two thresholds separate the known-bounded instances (exponent ~ 0)
from the genuine failures (exponent ~ 1 in the family parameter) by an
order of magnitude on each side; they are fixed here, a priori, not
tuned per instance.  Probes with vanishing denominator are excluded and
counted -- a family losing more than 10% of its probes cannot certify
anything.  Verdicts are empirical statements about the truncations
probed, never about an infinite-dimensional limit.

``falsify_dn`` handles families indexed by an unbounded integer
parameter where the ratio grows exponentially.  Exponential growth with
polynomial corrections (the typical failure profile is 2^n / poly(n))
is fitted with the regression  log2 ratio ~ kappa n + c log2 n + b,
whose kappa isolates the base-2 rate; a plain linear fit would smear
the polynomial factor into the slope.

All sweeps are pure and merge per-probe maxima, so they can be sharded
arbitrarily and recombined by max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._rng import decay_probes, make_rng, unit_probes
from .embed import gram_factor
from .seqspace import WeightSequence, norm_lambda, norm_s
from .staralg import GramForm

CERTIFY_EXPONENT = 0.05
FALSIFY_EXPONENT = 0.5
MAX_EXCLUDED_FRACTION = 0.10

VERDICT_BOUNDED = "certified-bounded"
VERDICT_GROWING = "falsified-growing"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GradedSpace:
    """A graded norm family plus candidate dominating norm.

    Norm callables must accept vectors of any dimension so a single space
    can be swept across a dimension grid.  ``probes`` maps (dim, rng,
    count) to a list of elements.
    """

    label: str
    norm0: Callable[[np.ndarray], float]
    graded: Callable[[np.ndarray, int], float]
    probes: Callable[[int, np.random.Generator, int], list]


def s_space() -> GradedSpace:
    """Polynomially graded truncations with the plain Euclidean norm as
    dominating-norm candidate."""

    def probe_family(dim, rng, count):
        alpha = np.log(np.arange(1, dim + 1, dtype=float))
        fam = unit_probes(dim, min(dim, 16))
        fam += decay_probes(rng, alpha, max(count - len(fam), 0))
        return fam

    return GradedSpace(
        label="s",
        norm0=lambda x: norm_s(x, 0),
        graded=norm_s,
        probes=probe_family,
    )


def lambda_space(alpha: WeightSequence, label: str | None = None) -> GradedSpace:
    """Exponentially graded truncations for a generator-tagged weight
    sequence; the candidate dominating norm is again the Euclidean one."""

    def graded(x, q):
        return norm_lambda(x, alpha.extend(len(np.asarray(x))), q)

    def probe_family(dim, rng, count):
        a = alpha.extend(dim).values
        fam = unit_probes(dim, min(dim, 16))
        fam += decay_probes(rng, a, max(count - len(fam), 0))
        return fam

    return GradedSpace(
        label=label or f"lambda-{alpha.kind}",
        norm0=lambda x: norm_s(x, 0),
        graded=graded,
        probes=probe_family,
    )


def dn_ratio(x, space: GradedSpace, q: int, r: int) -> float:
    """||x||_q^2 / (||x|| ||x||_r); NaN marks an excluded probe.

    The ratio is invariant under scaling of x since all three norms are
    1-homogeneous.  A vanishing denominator or an overflowing numerator
    excludes the probe; a merely overflowing denominator drives the ratio
    to zero, which is the honest limit.
    """
    num = space.graded(x, q) ** 2
    den = space.norm0(x) * space.graded(x, r)
    if den == 0.0 or not math.isfinite(num):
        return math.nan
    if not math.isfinite(den):
        return 0.0
    return num / den


@dataclass(frozen=True)
class DnProbe:
    """Certification request: space, grade, partner grades, grid, seeding."""

    space: GradedSpace
    q: int
    r_candidates: tuple[int, ...]
    dims: tuple[int, ...]
    probe_count: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.q < 0 or any(r < 0 for r in self.r_candidates):
            raise ValueError("grades must be nonnegative")
        if len(self.dims) < 2 or any(b <= a for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError("dimension grid must be strictly increasing with >= 2 points")
        if not self.r_candidates:
            raise ValueError("need at least one partner grade")


@dataclass
class DnCertificate:
    """Outcome of a certification sweep.

    ``constants[r][dim]`` is the largest observed ratio; ``exponents[r]``
    the fitted log-log slope of that constant against dimension.  The
    verdict is forced to be consistent with the exponents and thresholds,
    and ties among certifying r go to the smallest.
    """

    space: str
    q: int
    constants: dict = field(default_factory=dict)
    excluded: dict = field(default_factory=dict)
    probe_counts: dict = field(default_factory=dict)
    exponents: dict = field(default_factory=dict)
    verdict: str = VERDICT_INCONCLUSIVE
    witness_r: int | None = None
    thresholds: tuple[float, float] = (CERTIFY_EXPONENT, FALSIFY_EXPONENT)

    def rows(self) -> list[dict]:
        """Flat (dim, q, r, C, excluded_count) rows for delimited output."""
        out = []
        for r, per_dim in sorted(self.constants.items()):
            for dim, c in sorted(per_dim.items()):
                out.append(
                    {
                        "dim": dim,
                        "q": self.q,
                        "r": r,
                        "C": c,
                        "excluded_count": self.excluded.get(dim, 0),
                    }
                )
        return out

    def max_constant(self, r: int | None = None) -> float:
        r = self.witness_r if r is None else r
        if r is None or r not in self.constants:
            return math.nan
        return max(self.constants[r].values())

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "q": self.q,
            "constants": {str(r): {str(d): c for d, c in per.items()} for r, per in self.constants.items()},
            "excluded": {str(d): n for d, n in self.excluded.items()},
            "probe_counts": {str(d): n for d, n in self.probe_counts.items()},
            "exponents": {str(r): e for r, e in self.exponents.items()},
            "verdict": self.verdict,
            "witness_r": self.witness_r,
            "thresholds": list(self.thresholds),
        }


def loglog_slope(dims, values) -> float:
    """Least-squares slope of log2(value) against log2(dim).

    Zero or non-finite values are dropped; fewer than two surviving
    points give NaN.
    """
    pts = [(d, v) for d, v in zip(dims, values) if v > 0.0 and math.isfinite(v)]
    if len(pts) < 2:
        return math.nan
    xs = np.log2([p[0] for p in pts])
    ys = np.log2([p[1] for p in pts])
    a = np.column_stack([xs, np.ones_like(xs)])
    coef, *_ = np.linalg.lstsq(a, ys, rcond=None)
    return float(coef[0])


def growth_exponent(ns, ratios) -> float:
    """Base-2 exponent kappa of ratio ~ A 2^{kappa n} poly(n).

    Regression of log2(ratio) on [n, log2 n, 1]; the extra log2 n
    regressor absorbs polynomial corrections so kappa is the clean
    exponential rate.
    """
    pts = [(n, r) for n, r in zip(ns, ratios) if r > 0.0 and math.isfinite(r)]
    if len(pts) < 3:
        return math.nan
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.log2([p[1] for p in pts])
    a = np.column_stack([xs, np.log2(xs), np.ones_like(xs)])
    coef, *_ = np.linalg.lstsq(a, ys, rcond=None)
    return float(coef[0])


def certify_dn(probe: DnProbe) -> DnCertificate:
    """Sweep the grid, accumulate per-(r, dim) maxima, fit, decide."""
    cert = DnCertificate(space=probe.space.label, q=probe.q)
    cert.constants = {r: {} for r in probe.r_candidates}

    for dim in probe.dims:
        rng = make_rng(probe.seed, 0xD0, dim)
        family = probe.space.probes(dim, rng, probe.probe_count)
        if not family:
            raise ValueError(f"probe family empty at dim {dim}")
        excluded = 0
        best = {r: 0.0 for r in probe.r_candidates}
        for x in family:
            dead = False
            for r in probe.r_candidates:
                val = dn_ratio(x, probe.space, probe.q, r)
                if math.isnan(val):
                    dead = True
                else:
                    best[r] = max(best[r], val)
            if dead:
                excluded += 1
        if excluded == len(family):
            raise ValueError(f"all probes excluded at dim {dim}")
        cert.excluded[dim] = excluded
        cert.probe_counts[dim] = len(family)
        for r in probe.r_candidates:
            cert.constants[r][dim] = best[r]

    return finalize_certificate(cert)


def finalize_certificate(cert: DnCertificate) -> DnCertificate:
    """Fit the per-r growth exponents and force a consistent verdict.

    Shared by the grid sweep above and by gallery instances that fill the
    constants tables through their own (overflow-safe) ratio evaluation.
    """
    for r in cert.constants:
        dims = sorted(cert.constants[r])
        cert.exponents[r] = loglog_slope(dims, [cert.constants[r][d] for d in dims])

    worst_fraction = max(
        cert.excluded.get(d, 0) / cert.probe_counts[d] for d in cert.probe_counts
    )
    finite = {r: e for r, e in cert.exponents.items() if math.isfinite(e)}
    if worst_fraction > MAX_EXCLUDED_FRACTION or not finite:
        cert.verdict = VERDICT_INCONCLUSIVE
        cert.witness_r = None
    else:
        bounded = sorted(r for r, e in finite.items() if e <= CERTIFY_EXPONENT)
        if bounded:
            cert.verdict = VERDICT_BOUNDED
            cert.witness_r = bounded[0]
        elif all(e >= FALSIFY_EXPONENT for e in finite.values()) and len(finite) == len(
            cert.exponents
        ):
            cert.verdict = VERDICT_GROWING
            cert.witness_r = None
        else:
            cert.verdict = VERDICT_INCONCLUSIVE
            cert.witness_r = None
    return cert


@dataclass
class FalsificationReport:
    """Ratio growth along an integer-indexed family, per partner grade."""

    space: str
    q: int
    indices: list[int]
    ratios: dict  # r -> list of ratios
    exponents: dict  # r -> fitted base-2 exponent
    first_exceed: dict  # r -> smallest index with ratio > threshold (or None)
    threshold: float

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "q": self.q,
            "indices": self.indices,
            "ratios": {str(r): v for r, v in self.ratios.items()},
            "exponents": {str(r): v for r, v in self.exponents.items()},
            "first_exceed": {str(r): v for r, v in self.first_exceed.items()},
            "threshold": self.threshold,
        }


def falsify_dn(
    space: GradedSpace,
    family: Callable[[int], np.ndarray],
    q: int,
    r_candidates,
    n_max: int,
    threshold: float = 1e3,
) -> FalsificationReport:
    """Track the ratio along family(1..n_max) for each partner grade."""
    r_candidates = tuple(r_candidates)
    indices = list(range(1, n_max + 1))
    ratios = {r: [] for r in r_candidates}
    for n in indices:
        x = family(n)
        for r in r_candidates:
            val = dn_ratio(x, space, q, r)
            ratios[r].append(0.0 if math.isnan(val) else val)
    exponents = {r: growth_exponent(indices, ratios[r]) for r in r_candidates}
    first = {}
    for r in r_candidates:
        hit = next((n for n, v in zip(indices, ratios[r]) if v > threshold), None)
        first[r] = hit
    return FalsificationReport(
        space=space.label,
        q=q,
        indices=indices,
        ratios=ratios,
        exponents=exponents,
        first_exceed=first,
        threshold=threshold,
    )


def diagonal_selfadjoint_lift(gram: GramForm, alpha: WeightSequence, n: int) -> np.ndarray:
    """Transport of the diagonal grade map into the Gram geometry.

    With u the Gram factor (u^H u = G) and d_n = diag(e^{n alpha_j}), the
    lift a_n = u^{-1} d_n u is self-adjoint for the form G and realizes
    the pulled-back grade-n norm: ||xi||_n = |u xi|_{alpha,n} = ||a_n
    xi||_G.  Lifts built from one factor compose: a_n a_m = a_{n+m}.
    """
    if n < 0:
        raise ValueError("grade must be nonnegative")
    d = gram.dim
    if alpha.dim < d:
        raise ValueError("weight sequence shorter than the Gram dimension")
    u = gram_factor(gram)
    diag = np.exp(float(n) * alpha.values[:d])
    return np.linalg.solve(u, diag[:, None] * u)


def lifted_grade_norm(gram: GramForm, alpha: WeightSequence, n: int, xi) -> float:
    """||xi||_n = |u xi|_{alpha,n}, the norm the lift isometrizes."""
    u = gram_factor(gram)
    return norm_lambda(u @ np.asarray(xi, dtype=complex), alpha, n)
