"""Dominating-norm chains on unit extensions.

For a rapidly decaying sequence x and a scalar lambda the candidate
dominating norm is the weighted sum ||x + lambda||^2 = sum |x_j +
lambda|^2 j^{-2}, while the graded norms are the sup norms
max(sup_j |x_j| e^{t alpha_j}, |lambda|).  The grade-s square of a probe
is controlled by 16 R(2s + gamma) with R(t) = ||x + lambda|| ||x +
lambda||_t and gamma the integer index of the weight sequence; on the way
there every index k is routed through one of three regimes by comparing
|x_k| to |lambda|:

    small   (|x_k| <= |lambda|/2):             |x_k|^2 e^{2s a_k} <= R(t)
    middle  (|lambda|/2 < |x_k| <= 2|lambda|): ... <= 16 R(t)
    large   (|x_k| > 2|lambda|):               ... <= 2 R(t),
            where necessarily |x_k + lambda| > |x_k|/2

together with the scalar claim |lambda|^2 <= 4 R(gamma) (constant 8 when
alpha_1 = 0, as for logarithmic weights, where the index device
e^{gamma a_j} >= j+1 has no room at j = 1).  The middle-regime and
scalar-claim arguments look one index past the last crossing of the
|lambda|/2 level; a probe whose crossing happens at the truncation edge
is counted as boundary-flagged instead of being asserted.

The matrix version couples an exact off-diagonal chain at partner grade
2k+1 (constant 1, tight on matrix units) with the sequence chain applied
to the diagonal at doubled grade, giving a combined constant of at most
16 at the same partner grade.

Everything is evaluated in log space: the exponential weights overflow
double precision long before the ratios they control become interesting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._rng import decay_matrix_probes, make_rng, unit_extension_probes
from ..dnlab import DnCertificate, finalize_certificate
from ..seqspace import WeightSequence, gamma_index

LOG16 = math.log(16.0)
CHECK_SLACK = 1e-9  # additive log-space slack for the per-probe assertions


def _log_abs(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(values))


def _weighted_l2_log(values: np.ndarray, log_w: np.ndarray) -> float:
    """log of (sum |v_j|^2 w_j^2)^(1/2), -inf when all entries vanish."""
    mag = np.abs(values)
    mask = mag > 0.0
    if not np.any(mask):
        return -math.inf
    expo = 2.0 * (np.log(mag[mask]) + log_w[mask])
    peak = float(np.max(expo))
    total = math.fsum(np.exp(expo - peak).tolist())
    return 0.5 * (peak + math.log(total))


def _log_sup_grade(log_ax: np.ndarray, lam_abs: float, grade: float, alpha: np.ndarray) -> float:
    """log of max(sup_j |x_j| e^{grade a_j}, |lambda|)."""
    best = float(np.max(log_ax + grade * alpha)) if log_ax.size else -math.inf
    if lam_abs > 0.0:
        best = max(best, math.log(lam_abs))
    return best


@dataclass
class UnitDnProbeResult:
    final_ratio: float  # ||.||_s^2 / R(2s+gamma), exact in log space
    final_ok: bool
    lambda_ratio: float  # |lambda|^2 / R(gamma)
    lambda_ok: bool
    partitions_ok: bool
    boundary_flagged: bool
    excluded: bool


@dataclass
class UnitDnReport:
    """Chain verification summary for one dimension and grade."""

    dim: int
    grade: int
    gamma: int
    partner_grade: int
    lambda_bound: float = 4.0
    probe_count: int = 0
    excluded: int = 0
    boundary_flagged: int = 0
    max_final_ratio: float = 0.0
    max_lambda_ratio: float = 0.0
    final_failures: int = 0
    lambda_failures: int = 0
    partition_failures: int = 0

    @property
    def all_hold(self) -> bool:
        return (
            self.final_failures == 0
            and self.lambda_failures == 0
            and self.partition_failures == 0
        )

    def merge(self, res: UnitDnProbeResult) -> None:
        self.probe_count += 1
        if res.excluded:
            self.excluded += 1
            return
        if res.boundary_flagged:
            self.boundary_flagged += 1
            return
        self.max_final_ratio = max(self.max_final_ratio, res.final_ratio)
        self.max_lambda_ratio = max(self.max_lambda_ratio, res.lambda_ratio)
        if not res.final_ok:
            self.final_failures += 1
        if not res.lambda_ok:
            self.lambda_failures += 1
        if not res.partitions_ok:
            self.partition_failures += 1


def check_unit_probe(
    x: np.ndarray,
    lam: complex,
    alpha: np.ndarray,
    s: int,
    gamma: int,
    lambda_bound: float = 4.0,
) -> UnitDnProbeResult:
    """Verify the full chain for one (x, lambda) probe.

    ``alpha`` is the weight vector at the probe's dimension; the three
    norms entering the checks are recomputed here in log space.
    """
    x = np.asarray(x, dtype=complex)
    lam = complex(lam)
    lam_abs = abs(lam)
    t = 2 * s + gamma

    j = np.arange(1, x.size + 1, dtype=float)
    log_norm0 = _weighted_l2_log(x + lam, -np.log(j))
    if not math.isfinite(log_norm0):
        return UnitDnProbeResult(math.nan, True, math.nan, True, True, False, True)

    log_ax = _log_abs(x)
    log_r_t = log_norm0 + _log_sup_grade(log_ax, lam_abs, float(t), alpha)
    log_r_gamma = log_norm0 + _log_sup_grade(log_ax, lam_abs, float(gamma), alpha)

    # final inequality: max(sup |x_j|^2 e^{2s a_j}, |lambda|^2) <= 16 R(t)
    log_lhs = 2.0 * _log_sup_grade(log_ax, lam_abs, float(s), alpha)
    final_ok = log_lhs <= log_r_t + LOG16 + CHECK_SLACK
    final_ratio = math.exp(min(log_lhs - log_r_t, 64.0))

    # scalar claim: |lambda|^2 <= lambda_bound * R(gamma)
    if lam_abs > 0.0:
        lambda_ok = (
            2.0 * math.log(lam_abs) <= log_r_gamma + math.log(lambda_bound) + CHECK_SLACK
        )
        lambda_ratio = math.exp(min(2.0 * math.log(lam_abs) - log_r_gamma, 64.0))
    else:
        lambda_ok = True
        lambda_ratio = 0.0

    boundary = False
    partitions_ok = True
    if lam_abs > 0.0:
        ax = np.abs(x)
        # scalar claim inspects one index past the last |x_j + lambda| < |lambda|/2
        crossing = np.nonzero(np.abs(x + lam) < lam_abs / 2.0)[0]
        if crossing.size and crossing[-1] == x.size - 1:
            boundary = True
        small = ax <= lam_abs / 2.0
        large = ax > 2.0 * lam_abs
        middle = ~small & ~large
        # middle regime inspects one index past the last |x_j| > |lambda|/2
        above = np.nonzero(ax > lam_abs / 2.0)[0]
        if np.any(middle) and above.size and above[-1] == x.size - 1:
            boundary = True
        if not boundary:
            per_index = 2.0 * (log_ax + float(s) * alpha)
            if np.any(small):
                partitions_ok &= bool(np.max(per_index[small]) <= log_r_t + CHECK_SLACK)
            if np.any(middle):
                partitions_ok &= bool(
                    np.max(per_index[middle]) <= log_r_t + LOG16 + CHECK_SLACK
                )
            if np.any(large):
                partitions_ok &= bool(
                    np.max(per_index[large]) <= log_r_t + math.log(2.0) + CHECK_SLACK
                )
                # regime membership forces |x_k + lambda| > |x_k| / 2
                partitions_ok &= bool(
                    np.all(np.abs(x + lam)[large] > np.abs(x)[large] / 2.0 * (1 - 1e-12))
                )
    return UnitDnProbeResult(
        final_ratio, final_ok, lambda_ratio, lambda_ok, partitions_ok, boundary, False
    )


def lambda_unit_dn(
    alpha: WeightSequence, s: int, probes, gamma: int | None = None
) -> UnitDnReport:
    """Run the chain on explicit (x, lambda) probes at one dimension."""
    if not probes:
        raise ValueError("need at least one probe")
    dim = np.asarray(probes[0][0]).size
    if alpha.dim < dim:
        raise ValueError("weight sequence shorter than the probes")
    a = alpha.values[:dim]
    g = gamma_index(alpha) if gamma is None else int(gamma)
    report = UnitDnReport(dim=dim, grade=s, gamma=g, partner_grade=2 * s + g)
    for x, lam in probes:
        report.merge(check_unit_probe(np.asarray(x, dtype=complex), lam, a, s, g))
    return report


def lambda_unit_sweep(
    alpha_factory,
    s_grades,
    dims,
    probes_per_dim: int,
    seed: int = 0,
) -> tuple[list[UnitDnReport], DnCertificate]:
    """Seeded sweep across a dimension grid.

    gamma is pinned at the largest grid dimension so one integer governs
    the whole sweep.  Returns the per-(dim, s) reports plus a certificate
    whose constants table holds the max final ratios, keyed by the
    partner grade 2s + gamma.
    """
    dims = tuple(dims)
    gamma = gamma_index(alpha_factory(max(dims)))
    reports = []
    cert = DnCertificate(space="lambda-unit", q=min(s_grades))
    for s in s_grades:
        cert.constants[2 * s + gamma] = {}
    for dim in dims:
        alpha = alpha_factory(dim)
        rng = make_rng(seed, 0x1A, dim)
        probes = unit_extension_probes(rng, alpha.values, probes_per_dim)
        for s in s_grades:
            rep = lambda_unit_dn(alpha, s, probes, gamma=gamma)
            reports.append(rep)
            cert.constants[2 * s + gamma][dim] = rep.max_final_ratio
        cert.excluded[dim] = reports[-1].excluded
        cert.probe_counts[dim] = reports[-1].probe_count
    return reports, finalize_certificate(cert)


# ---------------------------------------------------------------------------
# matrix version


@dataclass
class KinfDnReport:
    """Off-diagonal, diagonal and combined constants at one dimension."""

    dim: int
    grade: int
    partner_grade: int
    probe_count: int = 0
    excluded: int = 0
    boundary_flagged: int = 0
    max_offdiag_ratio: float = 0.0
    max_combined_ratio: float = 0.0
    max_lambda_ratio: float = 0.0
    offdiag_failures: int = 0
    combined_failures: int = 0
    diag_failures: int = 0

    @property
    def all_hold(self) -> bool:
        return (
            self.offdiag_failures == 0
            and self.combined_failures == 0
            and self.diag_failures == 0
        )


def kinf_unit_dn(k: int, probes) -> KinfDnReport:
    """Verify the matrix chain for explicit (x, lambda) probes.

    Off-diagonal: sup_{i != j} |x_ij|^2 (ij)^{2k} <= ||x + lambda||
    ||x + lambda||_{2k+1}, with constant 1.  Diagonal: the sequence chain
    on (x_jj) at grade 2k with logarithmic weights, whose partner sup
    embeds into the matrix grade 2k+1.  Combined: the grade-k square
    against 16 R(2k+1).
    """
    if k < 1:
        raise ValueError("grade must be at least 1")
    if not probes:
        raise ValueError("need at least one probe")
    dim = np.asarray(probes[0][0]).shape[0]
    report = KinfDnReport(dim=dim, grade=k, partner_grade=2 * k + 1)
    j = np.arange(1, dim + 1, dtype=float)
    log_j = np.log(j)
    log_ij = log_j[:, None] + log_j[None, :]
    off_mask = ~np.eye(dim, dtype=bool)
    eye = np.eye(dim)

    for x, lam in probes:
        x = np.asarray(x, dtype=complex)
        lam = complex(lam)
        lam_abs = abs(lam)
        report.probe_count += 1

        # ||x + lambda||: column l2 norms (diagonal shifted) with weights j^-1
        shifted = x + lam * eye
        sq = shifted.real**2 + shifted.imag**2
        col_sq = np.array([math.fsum(sq[:, c].tolist()) for c in range(dim)])
        if not np.any(col_sq > 0.0):
            report.excluded += 1
            continue
        with np.errstate(divide="ignore"):
            log_norm0 = 0.5 * _logsumexp(np.log(col_sq, where=col_sq > 0,
                                                 out=np.full(dim, -np.inf)) - 2.0 * log_j)

        log_ax = _log_abs(x)

        def log_grade(n: float) -> float:
            best = float(np.max(log_ax + n * log_ij))
            if lam_abs > 0.0:
                best = max(best, math.log(lam_abs))
            return best

        log_r = log_norm0 + log_grade(2.0 * k + 1.0)

        # off-diagonal chain, constant 1
        off_vals = log_ax[off_mask] + float(k) * log_ij[off_mask]
        log_off = 2.0 * float(np.max(off_vals)) if off_vals.size else -math.inf
        if math.isfinite(log_off):
            report.max_offdiag_ratio = max(
                report.max_offdiag_ratio, math.exp(min(log_off - log_r, 64.0))
            )
            if log_off > log_r + CHECK_SLACK:
                report.offdiag_failures += 1

        # diagonal chain: grade 2k, weights log j, scalar-claim constant 8
        diag_res = check_unit_probe(
            np.diag(x).copy(), lam, log_j, 2 * k, 2, lambda_bound=8.0
        )
        if diag_res.boundary_flagged:
            report.boundary_flagged += 1
            continue
        if not (diag_res.final_ok and diag_res.lambda_ok and diag_res.partitions_ok):
            report.diag_failures += 1
        report.max_lambda_ratio = max(report.max_lambda_ratio, diag_res.lambda_ratio)

        # combined grade-k square against 16 R(2k+1)
        log_lhs = 2.0 * log_grade(float(k))
        report.max_combined_ratio = max(
            report.max_combined_ratio, math.exp(min(log_lhs - log_r, 64.0))
        )
        if log_lhs > log_r + LOG16 + CHECK_SLACK:
            report.combined_failures += 1
    return report


def _logsumexp(terms: np.ndarray) -> float:
    finite = terms[np.isfinite(terms)]
    if finite.size == 0:
        return -math.inf
    peak = float(np.max(finite))
    return peak + math.log(math.fsum(np.exp(finite - peak).tolist()))


def kinf_unit_sweep(k: int, dims, probes_per_dim: int, seed: int = 0) -> list[KinfDnReport]:
    """Seeded matrix-probe sweep across a dimension grid."""
    out = []
    for dim in dims:
        rng = make_rng(seed, 0x1B, dim)
        probes = decay_matrix_probes(rng, dim, probes_per_dim)
        out.append(kinf_unit_dn(k, probes))
    return out
