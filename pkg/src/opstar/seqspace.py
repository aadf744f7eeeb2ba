"""Graded norm families on truncated sequence spaces.

A weight sequence alpha (monotone non-decreasing, nonnegative) induces the
exponential norms (sum |xi_j|^2 e^{2 q alpha_j})^(1/2); the polynomial
norms (sum |xi_j|^2 j^{2q})^(1/2) are the alpha_j = log j special case and
negative q gives the dual norms.  Scalar gauges derived from alpha -- the
nuclearity gauge max log j / alpha_j and the integer gamma index -- drive
the dominating-norm instances downstream.

Indices are 1-based throughout: the unit vector e_j has its 1 at position
j, and weights are evaluated at j = 1..dim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

# relative tolerance for norm-equality assertions; sums mix terms spanning
# many orders of magnitude, so everything is accumulated with math.fsum
REL_TOL = 1e-10

GENERATOR_KINDS = ("linear", "log1p", "logj", "explicit")


@dataclass(frozen=True)
class WeightSequence:
    """Exponent sequence alpha_1 <= alpha_2 <= ... with a named generator.

    ``kind`` fixes how the sequence extends to larger dimension: the
    closed forms extend by formula, an explicit list refuses to
    extrapolate.  alpha_1 = 0 (the log-of-index generator) is accepted but
    flagged via ``positivity_deviation`` rather than silently shifted.
    """

    kind: str
    dim: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown weight generator {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.kind == "explicit":
            vals = np.asarray(self.params.get("values", ()), dtype=float)
            if len(vals) < self.dim:
                raise ValueError("explicit weights shorter than dim")
        v = self.values
        if np.any(v < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diff(v) < 0):
            raise ValueError("weights must be monotone non-decreasing")

    @cached_property
    def values(self) -> np.ndarray:
        j = np.arange(1, self.dim + 1, dtype=float)
        if self.kind == "linear":
            return float(self.params.get("scale", 1.0)) * j
        if self.kind == "log1p":
            return np.log(j + 1.0)
        if self.kind == "logj":
            return np.log(j)
        return np.asarray(self.params["values"][: self.dim], dtype=float)

    @property
    def positivity_deviation(self) -> bool:
        """True when some entry is zero (strict positivity is violated)."""
        return bool(np.any(self.values == 0.0))

    def extend(self, dim: int) -> "WeightSequence":
        """Same generator at a larger dimension; prefix-consistent."""
        if dim <= self.dim:
            return WeightSequence(self.kind, dim, self.params)
        if self.kind == "explicit" and len(self.params.get("values", ())) < dim:
            raise ValueError("explicit weight list cannot be extrapolated")
        return WeightSequence(self.kind, dim, self.params)

    def to_json(self) -> dict:
        params = dict(self.params)
        if "values" in params:
            params["values"] = [float(v) for v in params["values"]]
        return {"kind": self.kind, "params": params, "dim": self.dim}

    @classmethod
    def from_json(cls, record: dict) -> "WeightSequence":
        return cls(record["kind"], int(record["dim"]), dict(record.get("params", {})))


def linear_weights(dim: int, scale: float = 1.0) -> WeightSequence:
    return WeightSequence("linear", dim, {"scale": float(scale)})


def log1p_weights(dim: int) -> WeightSequence:
    return WeightSequence("log1p", dim)


def logj_weights(dim: int) -> WeightSequence:
    return WeightSequence("logj", dim)


def explicit_weights(values) -> WeightSequence:
    values = [float(v) for v in values]
    return WeightSequence("explicit", len(values), {"values": values})


def unit_vector(j: int, dim: int) -> np.ndarray:
    """1-based coordinate unit vector e_j."""
    if not 1 <= j <= dim:
        raise ValueError("unit vector index out of range")
    e = np.zeros(dim, dtype=complex)
    e[j - 1] = 1.0
    return e


@dataclass(frozen=True)
class GradedNormIndex:
    """Selects a weight family and grade: polynomial j^q, exponential
    e^{q alpha_j}, or dual-polynomial j^{-q} (q >= 0)."""

    kind: str
    q: int

    def __post_init__(self):
        if self.kind not in ("polynomial", "exponential", "dual-polynomial"):
            raise ValueError(f"unknown graded norm kind {self.kind!r}")
        if self.kind == "dual-polynomial" and self.q < 0:
            raise ValueError("dual-polynomial grade must be nonnegative")

    def log_weights(self, dim: int, alpha: WeightSequence | None = None) -> np.ndarray:
        j = np.arange(1, dim + 1, dtype=float)
        if self.kind == "polynomial":
            return self.q * np.log(j)
        if self.kind == "dual-polynomial":
            return -self.q * np.log(j)
        if alpha is None:
            raise ValueError("exponential norms need a weight sequence")
        if alpha.dim < dim:
            raise ValueError("weight sequence shorter than vector")
        return float(self.q) * alpha.values[:dim]


def _weighted_l2(entries: np.ndarray, log_weights: np.ndarray) -> float:
    """(sum |xi_j|^2 e^{2 w_j})^(1/2), overflow-safe.

    Accumulates exp-scaled terms with fsum relative to the peak exponent,
    so huge weights only overflow if the true value does.
    """
    entries = np.asarray(entries)
    if entries.size == 0:
        return 0.0
    mag = np.abs(entries)
    mask = mag > 0.0
    if not np.any(mask):
        return 0.0
    expo = 2.0 * (np.log(mag[mask]) + log_weights[mask])
    peak = float(np.max(expo))
    total = math.fsum(np.exp(expo - peak).tolist())
    half_log = 0.5 * (peak + math.log(total))
    if half_log > 709.0:
        return math.inf
    return math.exp(half_log)


def norm_s(xi, q: int) -> float:
    """Polynomial-weight norm (sum_j |xi_j|^2 j^{2q})^(1/2).

    Negative q gives the dual norms.  An empty vector has norm 0.  The
    weights j^{2q} are evaluated directly (they stay representable for
    every grade in practical range), so the grade-0 norm is exactly the
    Euclidean norm of the entries.
    """
    xi = np.asarray(xi)
    if xi.size == 0:
        return 0.0
    j = np.arange(1, xi.size + 1, dtype=float)
    terms = (xi.real**2 + xi.imag**2) * j ** (2.0 * q)
    return math.sqrt(math.fsum(terms.tolist()))


def norm_lambda(xi, alpha: WeightSequence, q: int) -> float:
    """Exponential-weight norm (sum_j |xi_j|^2 e^{2 q alpha_j})^(1/2)."""
    xi = np.asarray(xi)
    if alpha.dim < xi.size:
        raise ValueError("weight sequence shorter than vector")
    return _weighted_l2(xi, float(q) * alpha.values[: xi.size])


def graded_norm(xi, index: GradedNormIndex, alpha: WeightSequence | None = None) -> float:
    xi = np.asarray(xi)
    return _weighted_l2(xi, index.log_weights(xi.size, alpha))


class GaugeResult(NamedTuple):
    value: float
    index: int


def nuclearity_gauge(alpha: WeightSequence) -> GaugeResult:
    """max_{2 <= j <= dim} log(j)/alpha_j and the index attaining it.

    A bounded plateau of this gauge across growing dimension signals that
    the exponential-norm family is nuclear; a zero weight at some j >= 2
    makes the gauge infinite.
    """
    if alpha.dim < 2:
        raise ValueError("gauge needs dim >= 2")
    v = alpha.values
    j = np.arange(2, alpha.dim + 1, dtype=float)
    with np.errstate(divide="ignore"):
        ratios = np.log(j) / v[1:]
    k = int(np.argmax(ratios))
    return GaugeResult(float(ratios[k]), k + 2)


PLATEAU_RATIO = 1.05  # gauge(d) / gauge(d//4) above this flags growth


def nuclearity_plateau(alpha: WeightSequence) -> tuple[GaugeResult, GaugeResult, bool]:
    """Compare the gauge at full dimension and quarter dimension.

    Returns (gauge at dim//4, gauge at dim, plateauing).  The quarter-dim
    comparison point makes genuine log-speed growth of the gauge visible
    while tolerating the slow approach of bounded gauges to their sup.
    """
    quarter = max(2, alpha.dim // 4)
    g_quarter = nuclearity_gauge(alpha.extend(quarter))
    g_full = nuclearity_gauge(alpha)
    plateauing = g_full.value <= g_quarter.value * PLATEAU_RATIO
    return g_quarter, g_full, plateauing


def gamma_index(alpha: WeightSequence) -> int:
    """Smallest integer >= max_j (1/alpha_j + 2 log j / alpha_j).

    The resulting gamma satisfies e^{gamma alpha_j} >= j + 1 for every j
    up to the truncation, which is what the unit-extension chains consume.
    Undefined when some alpha_j = 0.
    """
    v = alpha.values
    if np.any(v == 0.0):
        raise ValueError("gamma index undefined for zero weights")
    j = np.arange(1, alpha.dim + 1, dtype=float)
    m = float(np.max((1.0 + 2.0 * np.log(j)) / v))
    g = math.ceil(m - 1e-12)
    return max(g, 1)
