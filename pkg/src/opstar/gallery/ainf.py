"""The smooth-boundary disc algebra counterexample family.

The polynomials f_n = (z^2 - 1)^n have interval sup norm exactly 1 but
disc sup norm 2^n, while every derivative sup up to order p stays below
n^p 2^p 2^n.  The ratio

    ||f_n||_disc^2 / (||f_n||_[-1,1] ||f_n||_p)

therefore grows like 2^n over a degree-p polynomial: no constant can
close the dominating-norm inequality against the interval sup norm.
Coefficients and derivative coefficients are exact integers; sup norms
are grid maxima over the boundary circle (which passes through the
maximizers +-i) and a Chebyshev interval grid (which contains the
maximizer 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..dnlab import GradedSpace, growth_exponent
from .entire import sup_on_circle, sup_on_interval

N_CAP = 60  # 4^60 is still comfortably inside double range


def fn_coeffs(n: int) -> list[int]:
    """Exact ascending coefficients of (z^2 - 1)^n."""
    if not 1 <= n <= N_CAP:
        raise ValueError(f"family index must be in 1..{N_CAP}")
    c = [0] * (2 * n + 1)
    for k in range(n + 1):
        c[2 * k] = math.comb(n, k) * (-1) ** (n - k)
    return c


def derivative_coeffs(coeffs) -> list:
    """Exact derivative in the same ascending-coefficient convention."""
    return [k * coeffs[k] for k in range(1, len(coeffs))]


def disc_norm_p(coeffs, p: int) -> float:
    """max over derivative orders 0..p of the closed-disc sup norm."""
    c = list(coeffs)
    best = 0.0
    for _ in range(p + 1):
        if not c:
            break
        best = max(best, sup_on_circle(np.asarray(c, dtype=float), 1.0))
        c = derivative_coeffs(c)
    return best


def disc_poly_family(n: int) -> np.ndarray:
    """f_n as a float coefficient vector (the probe family)."""
    return np.asarray(fn_coeffs(n), dtype=float)


def ainf_space() -> GradedSpace:
    """Graded space of polynomial boundary samples: grade p is the
    derivative sup norm over the closed disc, the candidate dominating
    norm is the interval sup norm."""

    def probes(dim, rng, count):  # family-indexed space; grid probing unused
        raise NotImplementedError("use falsify_dn with the f_n family")

    return GradedSpace(
        label="ainf-disc",
        norm0=lambda c: sup_on_interval(np.asarray(c, dtype=complex)),
        graded=lambda c, p: disc_norm_p(c, p),
        probes=probes,
    )


@dataclass(frozen=True)
class AinfRow:
    n: int
    norm_interval: float
    norm_disc: float
    norm_p: float
    derivative_bound: float  # n^p 2^p 2^n
    lower_bound_ratio: float  # 2^n / (2^p n^p)
    ratio: float  # norm_disc^2 / (norm_interval * norm_p)


@dataclass
class AinfReport:
    p: int
    threshold: float
    rows: list = field(default_factory=list)
    fitted_exponent: float = math.nan
    first_exceed: int | None = None
    bound_violations: int = 0
    overflow: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "threshold": self.threshold,
            "fitted_exponent": self.fitted_exponent,
            "first_exceed": self.first_exceed,
            "bound_violations": self.bound_violations,
            "overflow": self.overflow,
            "rows": [
                {
                    "n": r.n,
                    "norm_interval": r.norm_interval,
                    "norm_disc": r.norm_disc,
                    "norm_p": r.norm_p,
                    "derivative_bound": r.derivative_bound,
                    "lower_bound_ratio": r.lower_bound_ratio,
                    "ratio": r.ratio,
                }
                for r in self.rows
            ],
        }


def ainf_counterexample(n_max: int, p: int, threshold: float = 1e3) -> AinfReport:
    """Growth table for f_1..f_{n_max} at derivative order p."""
    if n_max > N_CAP:
        raise ValueError(f"n_max capped at {N_CAP} for double-precision headroom")
    if p < 0:
        raise ValueError("derivative order must be nonnegative")
    report = AinfReport(p=p, threshold=threshold)
    for n in range(1, n_max + 1):
        coeffs = disc_poly_family(n)
        norm_interval = sup_on_interval(coeffs)
        norm_disc = sup_on_circle(coeffs, 1.0)
        norm_p = disc_norm_p(coeffs, p)
        bound = (float(n) ** p) * (2.0**p) * (2.0**n)
        if not all(map(math.isfinite, (norm_interval, norm_disc, norm_p, bound))):
            report.overflow = True
            break
        if norm_p > bound * (1 + 1e-12):
            report.bound_violations += 1
        ratio = norm_disc**2 / (norm_interval * norm_p)
        lower = 2.0**n / ((2.0 * n) ** p)
        report.rows.append(
            AinfRow(n, norm_interval, norm_disc, norm_p, bound, lower, ratio)
        )
    ns = [r.n for r in report.rows]
    report.fitted_exponent = growth_exponent(ns, [r.ratio for r in report.rows])
    report.first_exceed = next(
        (r.n for r in report.rows if r.ratio > threshold), None
    )
    return report
