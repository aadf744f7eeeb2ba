"""Batch entry point.

Subcommands load inputs, run certifications / gallery instances /
embeddings, and write a versioned JSON report plus CSV curves (and PNG
renderings of each curve) into the output directory.

Exit status: 0 when every check passes, 1 on malformed input, 2 on check
failure, 3 on numeric overflow (partial report written and flagged).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import gallery
from ._rng import make_rng
from .dnlab import (
    DnProbe,
    VERDICT_BOUNDED,
    certify_dn,
    falsify_dn,
    lambda_space,
    s_space,
)
from .embed import build_phi, embed_Phi, full_pipeline, isometry_from_gram
from .report import RunReport
from .seqspace import (
    WeightSequence,
    linear_weights,
    log1p_weights,
    logj_weights,
    nuclearity_plateau,
)
from .staralg import (
    GramForm,
    StarAlgebraSpec,
    alpha_gram,
    check_alpha,
    check_beta,
    check_delta,
    check_gamma,
    mult_operator,
)

DEFAULT_TOL = 1e-10


class InputError(Exception):
    """Malformed configuration or input file."""


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in str(text).split(",") if p != "")
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in str(text).split(",") if p != "")
    except ValueError as exc:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from exc


def _weight_factory(kind: str, scale: float):
    if kind == "linear":
        return lambda dim: linear_weights(dim, scale)
    if kind == "log1p":
        return lambda dim: log1p_weights(dim)
    if kind == "logj":
        return lambda dim: logj_weights(dim)
    raise InputError(f"unknown weight generator {kind!r}")


def _weights_from_args(args):
    """Weight factory from flags or a serialized {kind, params, dim} record."""
    if getattr(args, "alpha_file", None):
        record = _load_json(args.alpha_file)
        try:
            base = WeightSequence.from_json(record)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{args.alpha_file}: {exc}") from exc

        def factory(dim):
            try:
                return base.extend(dim)
            except ValueError as exc:
                raise InputError(f"{args.alpha_file}: {exc}") from exc

        return factory
    return _weight_factory(args.alpha_kind, args.alpha_scale)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_algebra(path: str) -> StarAlgebraSpec:
    record = _load_json(path)
    try:
        return StarAlgebraSpec.from_json(record, label=path)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_gram(path: str) -> GramForm:
    record = _load_json(path)
    try:
        mat = np.asarray(record["matrix"], dtype=float)
        if mat.shape[-1] != 2:
            raise ValueError("matrix entries must be [re, im] pairs")
        return GramForm(mat[..., 0] + 1j * mat[..., 1])
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _cplx_dump(a: np.ndarray):
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


# ---------------------------------------------------------------------------
# command handlers; each fills a RunReport and returns it


def cmd_dn_certify(args) -> RunReport:
    dims = _parse_int_list(args.dims)
    r_list = _parse_int_list(args.r)
    if args.space == "s":
        space = s_space()
    elif args.space in ("torus1", "torus2"):
        space = gallery.torus_space(int(args.space[-1]))
    elif args.space == "lambda":
        factory = _weights_from_args(args)
        space = lambda_space(factory(max(dims)))
    else:
        raise InputError(f"unknown space {args.space!r}")

    report = RunReport(
        "dn certify",
        args.seed,
        {
            "space": space.label,
            "q": args.q,
            "r": list(r_list),
            "dims": list(dims),
            "probes": args.probes,
        },
        {"tol": args.tol, "certify_exponent": 0.05, "falsify_exponent": 0.5},
    )
    probe = DnProbe(space, args.q, r_list, dims, probe_count=args.probes, seed=args.seed)
    cert = certify_dn(probe)
    report.data["certificate"] = cert.to_json()
    report.add_curve(
        "certificate",
        ["dim", "q", "r", "C", "excluded_count"],
        [[row["dim"], row["q"], row["r"], row["C"], row["excluded_count"]] for row in cert.rows()],
    )
    report.add_check("verdict-certified-bounded", cert.verdict == VERDICT_BOUNDED, cert.verdict)
    if args.max_constant is not None:
        c = cert.max_constant()
        report.add_check("max-constant", c <= args.max_constant, c, args.max_constant)
    return report


def cmd_dn_falsify(args) -> RunReport:
    report = RunReport(
        "dn falsify",
        args.seed,
        {"family": args.family, "p": args.p, "n_max": args.n_max, "threshold": args.threshold},
        {"falsify_exponent": 0.5},
    )
    if args.family == "ainf":
        space = gallery.ainf_space()
        fam = falsify_dn(
            space, gallery.disc_poly_family, 0, [args.p], args.n_max, args.threshold
        )
    elif args.family == "basis":
        # unit-vector family in the polynomially graded space: flat ratios
        space = s_space()

        def family(n):
            e = np.zeros(n, dtype=complex)
            e[n - 1] = 1.0
            return e

        fam = falsify_dn(space, family, args.q, [2 * args.q], args.n_max, args.threshold)
    else:
        raise InputError(f"unknown family {args.family!r}")
    report.data["falsification"] = fam.to_json()
    r0 = list(fam.ratios)[0]
    report.add_curve(
        "growth",
        ["n", "ratio"],
        [[n, v] for n, v in zip(fam.indices, fam.ratios[r0])],
    )
    if args.family == "ainf":
        report.add_check(
            "growth-exponent>=0.5", fam.exponents[r0] >= 0.5, fam.exponents[r0], 0.5
        )
        report.add_check(
            "threshold-exceeded", fam.first_exceed[r0] is not None, fam.first_exceed[r0]
        )
    else:
        report.add_check(
            "exponent-flat", abs(fam.exponents[r0]) <= 0.05, fam.exponents[r0], 0.05
        )
    return report


def cmd_algebra_check(args) -> RunReport:
    alg = _load_algebra(args.spec)
    report = RunReport(
        "algebra check",
        args.seed,
        {"spec": args.spec, "dim": alg.dim, "gram": args.gram or "generated"},
        {"tol": args.tol},
    )
    if args.gram:
        gram = _load_gram(args.gram)
    else:
        gram = alpha_gram(alg, make_rng(args.seed, 0xA16))
    defect_a = check_alpha(alg, gram)
    defect_g = check_gamma(alg, gram)
    beta_bounds = check_beta(alg, gram)
    delta_ok = check_delta(alg)
    report.data.update(
        {
            "alpha_defect": defect_a,
            "gamma_defect": defect_g,
            "beta_bounds": beta_bounds,
            "delta_full_rank": delta_ok,
            "gram_condition": gram.condition_number,
        }
    )
    report.add_check("alpha", defect_a <= args.tol, defect_a, args.tol)
    report.add_check("gamma", defect_g <= args.tol, defect_g, args.tol)
    report.add_check("delta-dense-products", delta_ok)
    report.add_curve(
        "beta_bounds",
        ["generator", "bound"],
        [[i + 1, b] for i, b in enumerate(beta_bounds)],
    )
    return report


def cmd_embed_run(args) -> RunReport:
    alg = _load_algebra(args.spec)
    gram = _load_gram(args.gram) if args.gram else alpha_gram(alg, make_rng(args.seed, 0xE3))
    ambient = args.ambient if args.ambient else 4 * alg.dim
    report = RunReport(
        "embed run",
        args.seed,
        {
            "spec": args.spec,
            "dim": alg.dim,
            "ambient": ambient,
            "method": args.method,
            "samples": args.samples,
        },
        {"linear_tol": 1e-12, "composed_tol": 1e-10},
    )
    try:
        emb = full_pipeline(
            alg, gram, ambient, seed=args.seed, samples=args.samples, method=args.method
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.data["embedding"] = emb.to_json()
    # tolerances stretch with the Gram conditioning past 1e6 (reported)
    scale = max(1.0, emb.gram_condition / 1e6)
    report.add_check("isometry", emb.isometry_defect <= 1e-12 * scale, emb.isometry_defect)
    report.add_check(
        "phi-star-phi-identity", emb.phi_star_phi_defect <= 1e-12 * scale, emb.phi_star_phi_defect
    )
    report.add_check(
        "projector-idempotent",
        emb.projector_idempotent_defect <= 1e-12 * scale,
        emb.projector_idempotent_defect,
    )
    report.add_check(
        "projector-hermitian",
        emb.projector_hermitian_defect <= 1e-12 * scale,
        emb.projector_hermitian_defect,
    )
    report.add_check(
        "unit-to-projector", emb.unit_to_projector_defect <= 1e-10 * scale, emb.unit_to_projector_defect
    )
    report.add_check(
        "multiplicative", emb.multiplicativity_defect <= 1e-10 * scale, emb.multiplicativity_defect
    )
    report.add_check("star-map", emb.involution_defect <= 1e-10 * scale, emb.involution_defect)
    report.add_check("injective", emb.injectivity_margin > 0.0, emb.injectivity_margin)
    if args.emit_matrices:
        wit = isometry_from_gram(gram, ambient, method=args.method)
        phi, _ = build_phi(wit)
        report.data["matrices"] = {
            "phi": _cplx_dump(phi),
            "images": [
                _cplx_dump(embed_Phi(wit, mult_operator(alg, _unit_coord(alg.dim, i))))
                for i in range(alg.dim)
            ],
        }
    return report


def _unit_coord(dim: int, i: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[i] = 1.0
    return e


def cmd_gallery_torus(args) -> RunReport:
    report = RunReport(
        "gallery torus",
        args.seed,
        {"torus_dim": args.torus_dim, "count": args.count},
        {"band": list(gallery.WEYL_BANDS.get(args.torus_dim, (math.nan, math.nan)))},
    )
    spec = gallery.torus_spectrum(args.torus_dim, args.count)
    ks, ratios = gallery.weyl_ratios(spec, k_min=min(100, args.count))
    report.data["eigenvalue_head"] = spec.eigenvalues[: min(32, spec.count)].tolist()
    stride = max(1, len(ks) // 2000)
    report.add_curve(
        "weyl",
        ["k", "eigenvalue", "ratio"],
        [
            [int(k), int(spec.eigenvalues[k - 1]), float(r)]
            for k, r in zip(ks[::stride], ratios[::stride])
        ],
    )
    if args.torus_dim in gallery.WEYL_BANDS and len(ratios):
        lo, hi = gallery.WEYL_BANDS[args.torus_dim]
        report.data["ratio_min"] = float(np.min(ratios))
        report.data["ratio_max"] = float(np.max(ratios))
        report.add_check("weyl-band", bool(np.min(ratios) >= lo and np.max(ratios) <= hi))
        report.add_check(
            "band-width-ratio<4", float(np.max(ratios) / np.min(ratios)) < 4.0
        )
    return report


def cmd_gallery_legendre(args) -> RunReport:
    report = RunReport(
        "gallery legendre",
        args.seed,
        {"max_degree": args.max_degree},
        {"orthonormality_tol": 1e-12, "recurrence_tol": 1e-12},
    )
    nodes, weights = gallery.gauss_legendre(2 * (args.max_degree + 1))
    table = gallery.legendre.legendre_table(args.max_degree, nodes)
    gram = (table * weights) @ table.T
    defect = np.abs(gram - np.eye(args.max_degree + 1))
    grid = np.linspace(-1.0, 1.0, 2001)
    residual = gallery.legendre.recurrence_residual(max(args.max_degree, 50), grid)
    rows = [
        [k, float(np.max(defect[k])), float(np.abs(gram[k, k] - 1.0))]
        for k in range(args.max_degree + 1)
    ]
    report.add_curve("orthonormality", ["degree", "max_defect", "diag_defect"], rows)
    report.data["recurrence_residual"] = residual
    report.add_check("orthonormal", float(np.max(defect)) <= 1e-12, float(np.max(defect)))
    report.add_check("recurrence", residual <= 1e-12, residual)
    return report


def cmd_gallery_nikolskii(args) -> RunReport:
    report = RunReport(
        "gallery nikolskii",
        args.seed,
        {"count": args.count, "max_degree": args.max_degree},
        {"slack_tol": 1e-9, "witness_factor": 2.0},
    )
    rng = make_rng(args.seed, 0x21)
    rows = []
    holds = 0
    for i in range(args.count):
        degree = int(rng.integers(0, args.max_degree + 1))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        res = gallery.nikolskii_check(coeffs)
        holds += int(res.holds)
        rows.append([i, res.degree, res.sup_norm, res.l2_norm, res.bound, res.slack])
    report.add_curve("samples", ["sample", "degree", "sup", "l2", "bound", "slack"], rows)
    report.add_check("inequality-holds", holds == args.count, holds, args.count)

    witness_rows = []
    worst_factor = 0.0
    for degree in range(1, args.max_degree + 1):
        res = gallery.nikolskii_check(
            gallery.nikolskii_extremal_witness(degree), basis="legendre"
        )
        factor = res.bound / res.sup_norm
        worst_factor = max(worst_factor, factor)
        witness_rows.append([degree, res.sup_norm, res.l2_norm, factor])
    report.add_curve("witness", ["degree", "sup", "l2", "bound_over_sup"], witness_rows)
    report.add_check("witness-within-factor-2", worst_factor <= 2.0, worst_factor, 2.0)
    return report


def cmd_gallery_hadamard(args) -> RunReport:
    radii = _parse_float_list(args.radii)
    report = RunReport(
        "gallery hadamard",
        args.seed,
        {"count": args.count, "radii": list(radii), "max_degree": args.max_degree},
        {"slack_tol": 1e-8},
    )
    rng = make_rng(args.seed, 0x3C)
    rows = []
    ok = True
    for i in range(args.count):
        degree = int(rng.integers(0, args.max_degree + 1))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        for r in radii:
            res = gallery.hadamard_check(coeffs, r)
            scale = max(1.0, res.norm_interval * res.norm_ellipse_r2)
            ok &= res.slack >= -1e-8 * scale
            rows.append([i, r, res.norm_ellipse_r, res.norm_interval, res.norm_ellipse_r2, res.slack])
    report.add_curve(
        "samples", ["sample", "r", "norm_er", "norm_interval", "norm_er2", "slack"], rows
    )
    report.add_check("three-circle-holds", ok)
    return report


def cmd_gallery_taylor(args) -> RunReport:
    report = RunReport(
        "gallery taylor-tail",
        args.seed,
        {"count": args.count, "orders": [args.n_min, args.n_max], "degree": args.degree},
        {"slack_tol": 1e-8},
    )
    rng = make_rng(args.seed, 0x77)
    rows = []
    ok = True
    for i in range(args.count):
        coeffs = rng.standard_normal(args.degree + 1) + 1j * rng.standard_normal(args.degree + 1)
        for n in range(args.n_min, args.n_max + 1):
            lhs, rhs = gallery.taylor_tail_bound(coeffs, n)
            ok &= lhs <= rhs + 1e-8 * max(1.0, rhs)
            rows.append([i, n, lhs, rhs])
    report.add_curve("samples", ["sample", "n", "tail_sup", "bound"], rows)
    report.add_check("tail-bound-holds", ok)
    return report


def cmd_gallery_lambda_unit(args) -> RunReport:
    dims = _parse_int_list(args.dims)
    s_grades = _parse_int_list(args.s)
    factory = _weights_from_args(args)
    report = RunReport(
        "gallery lambda-unit",
        args.seed,
        {
            "alpha": args.alpha_kind,
            "alpha_scale": args.alpha_scale,
            "s": list(s_grades),
            "dims": list(dims),
            "probes": args.probes,
        },
        {"final_constant": 16.0, "lambda_constant": 4.0},
    )
    gauge_quarter, gauge_full, plateau = nuclearity_plateau(factory(max(dims)))
    report.data["nuclearity_gauge"] = {
        "quarter": gauge_quarter.value,
        "full": gauge_full.value,
        "plateauing": plateau,
    }
    reports, cert = gallery.lambda_unit_sweep(factory, s_grades, dims, args.probes, seed=args.seed)
    report.data["certificate"] = cert.to_json()
    report.data["gamma"] = reports[0].gamma if reports else None
    rows = [
        [r.dim, r.grade, r.gamma, r.max_final_ratio, r.max_lambda_ratio, r.boundary_flagged, r.excluded]
        for r in reports
    ]
    report.add_curve(
        "chain",
        ["dim", "s", "gamma", "max_final_ratio", "max_lambda_ratio", "boundary_flagged", "excluded"],
        rows,
    )
    report.add_check("nuclearity-plateau", plateau, gauge_full.value)
    report.add_check("all-probes-within-16", all(r.all_hold for r in reports))
    report.add_check(
        "no-boundary-flags", all(r.boundary_flagged == 0 for r in reports)
    )
    report.add_check("verdict-certified-bounded", cert.verdict == VERDICT_BOUNDED, cert.verdict)
    worst = max((r.max_final_ratio for r in reports), default=0.0)
    report.add_check("max-final-ratio<=16", worst <= 16.0 + 1e-9, worst, 16.0)
    return report


def cmd_gallery_kinf_unit(args) -> RunReport:
    dims = _parse_int_list(args.dims)
    report = RunReport(
        "gallery kinf-unit",
        args.seed,
        {"k": args.k, "dims": list(dims), "probes": args.probes},
        {"combined_constant": 16.0, "offdiag_constant": 1.0},
    )
    reports = gallery.kinf_unit_sweep(args.k, dims, args.probes, seed=args.seed)
    rows = [
        [r.dim, r.grade, r.max_combined_ratio, r.max_offdiag_ratio, r.max_lambda_ratio, r.boundary_flagged]
        for r in reports
    ]
    report.add_curve(
        "chain",
        ["dim", "k", "max_combined_ratio", "max_offdiag_ratio", "max_lambda_ratio", "boundary_flagged"],
        rows,
    )
    report.add_check("all-probes-within-16", all(r.all_hold for r in reports))
    worst = max((r.max_combined_ratio for r in reports), default=0.0)
    report.add_check("max-combined-ratio<=16", worst <= 16.0 + 1e-9, worst, 16.0)
    return report


def cmd_gallery_bump(args) -> RunReport:
    orders = _parse_int_list(args.orders)
    scales = _parse_float_list(args.scales)
    report = RunReport(
        "gallery bump",
        args.seed,
        {"orders": list(orders), "scales": list(scales), "lam": args.lam},
        {"constant_bound": "order+1"},
    )
    rows = []
    ok = True
    for m in orders:
        for scale in scales:
            res = gallery.bump_dn_check(gallery.BumpFunction(scale), m, lam=args.lam)
            ok &= res.holds
            rows.append([m, scale, res.constant, res.norm0, res.norm_2m])
    report.add_curve("constants", ["order", "scale", "constant", "norm0", "norm_2m"], rows)
    report.add_check("interpolation-holds", ok)
    return report


def cmd_gallery_ainf(args) -> RunReport:
    report = RunReport(
        "gallery ainf",
        args.seed,
        {"n_max": args.n_max, "p": args.p, "threshold": args.threshold},
        {"exponent_band": [0.9, 1.1], "norm_tol": 1e-8},
    )
    res = gallery.ainf_counterexample(args.n_max, args.p, threshold=args.threshold)
    report.data["counterexample"] = res.to_json()
    report.overflow = res.overflow
    report.add_curve(
        "growth",
        ["n", "norm_interval", "norm_disc", "norm_p", "derivative_bound", "ratio"],
        [
            [r.n, r.norm_interval, r.norm_disc, r.norm_p, r.derivative_bound, r.ratio]
            for r in res.rows
        ],
    )
    report.add_check("derivative-bound-holds", res.bound_violations == 0, res.bound_violations)
    if args.n_max >= 6:
        report.add_check(
            "ratio-monotone-from-5",
            all(b.ratio > a.ratio for a, b in zip(res.rows[4:], res.rows[5:])),
        )
    # short tables cannot reach the threshold or pin the rate; only assert
    # those on runs long enough to answer the question
    if args.n_max >= 30:
        report.add_check(
            "threshold-exceeded",
            res.first_exceed is not None and res.first_exceed <= 30,
            res.first_exceed,
        )
        report.add_check(
            "fitted-exponent~1",
            bool(abs(res.fitted_exponent - 1.0) <= 0.1),
            res.fitted_exponent,
        )
    return report


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opstar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, probes_default=200):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="opstar-out")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--probes", type=int, default=probes_default)
        p.add_argument("--no-plot", action="store_true")

    run = sub.add_parser("run", help="dispatch a command from a JSON config")
    run.add_argument("--config", required=True)

    dn = sub.add_parser("dn", help="dominating-norm certification and falsification")
    dn_sub = dn.add_subparsers(dest="dn_command", required=True)

    cert = dn_sub.add_parser("certify")
    cert.add_argument("--space", default="s", choices=["s", "lambda", "torus1", "torus2"])
    cert.add_argument("--q", type=int, required=True)
    cert.add_argument("--r", required=True, help="comma-separated partner grades")
    cert.add_argument("--dims", default="64,256,1024")
    cert.add_argument("--alpha-kind", default="linear")
    cert.add_argument("--alpha-scale", type=float, default=1.0)
    cert.add_argument("--alpha-file", default=None, help="serialized weight record")
    cert.add_argument("--max-constant", type=float, default=None)
    common(cert)
    cert.set_defaults(handler=cmd_dn_certify)

    fals = dn_sub.add_parser("falsify")
    fals.add_argument("--family", default="ainf", choices=["ainf", "basis"])
    fals.add_argument("--p", type=int, default=3)
    fals.add_argument("--q", type=int, default=1)
    fals.add_argument("--n-max", type=int, default=40)
    fals.add_argument("--threshold", type=float, default=1e3)
    common(fals)
    fals.set_defaults(handler=cmd_dn_falsify)

    alg = sub.add_parser("algebra", help="structure-constant algebra checks")
    alg_sub = alg.add_subparsers(dest="algebra_command", required=True)
    algc = alg_sub.add_parser("check")
    algc.add_argument("spec")
    algc.add_argument("--gram", default=None)
    common(algc)
    algc.set_defaults(handler=cmd_algebra_check)

    emb = sub.add_parser("embed", help="Gram-isometry embedding pipeline")
    emb_sub = emb.add_subparsers(dest="embed_command", required=True)
    embr = emb_sub.add_parser("run")
    embr.add_argument("spec")
    embr.add_argument("--gram", default=None)
    embr.add_argument("--ambient", type=int, default=None)
    embr.add_argument("--method", default="cholesky", choices=["cholesky", "sqrt"])
    embr.add_argument("--samples", type=int, default=20)
    embr.add_argument("--emit-matrices", action="store_true")
    common(embr)
    embr.set_defaults(handler=cmd_embed_run)

    gal = sub.add_parser("gallery", help="named executable instances")
    gal_sub = gal.add_subparsers(dest="gallery_command", required=True)

    torus = gal_sub.add_parser("torus")
    torus.add_argument("--torus-dim", type=int, default=1, choices=[1, 2, 3])
    torus.add_argument("--count", type=int, default=10000)
    common(torus)
    torus.set_defaults(handler=cmd_gallery_torus)

    leg = gal_sub.add_parser("legendre")
    leg.add_argument("--max-degree", type=int, default=30)
    common(leg)
    leg.set_defaults(handler=cmd_gallery_legendre)

    nik = gal_sub.add_parser("nikolskii")
    nik.add_argument("--count", type=int, default=1000)
    nik.add_argument("--max-degree", type=int, default=30)
    common(nik)
    nik.set_defaults(handler=cmd_gallery_nikolskii)

    had = gal_sub.add_parser("hadamard")
    had.add_argument("--count", type=int, default=100)
    had.add_argument("--radii", default="1.2,1.5,2")
    had.add_argument("--max-degree", type=int, default=10)
    common(had)
    had.set_defaults(handler=cmd_gallery_hadamard)

    tay = gal_sub.add_parser("taylor-tail")
    tay.add_argument("--count", type=int, default=100)
    tay.add_argument("--degree", type=int, default=20)
    tay.add_argument("--n-min", type=int, default=5)
    tay.add_argument("--n-max", type=int, default=15)
    common(tay)
    tay.set_defaults(handler=cmd_gallery_taylor)

    lam = gal_sub.add_parser("lambda-unit")
    lam.add_argument("--alpha-kind", default="linear")
    lam.add_argument("--alpha-scale", type=float, default=1.0)
    lam.add_argument("--alpha-file", default=None, help="serialized weight record")
    lam.add_argument("--s", default="1,2")
    lam.add_argument("--dims", default="64,256,1024")
    common(lam, probes_default=1000)
    lam.set_defaults(handler=cmd_gallery_lambda_unit)

    kin = gal_sub.add_parser("kinf-unit")
    kin.add_argument("--k", type=int, default=1)
    kin.add_argument("--dims", default="16,64,256")
    common(kin)
    kin.set_defaults(handler=cmd_gallery_kinf_unit)

    bmp = gal_sub.add_parser("bump")
    bmp.add_argument("--orders", default="1,2")
    bmp.add_argument("--scales", default="1,0.5,0.25")
    bmp.add_argument("--lam", type=float, default=0.5)
    common(bmp)
    bmp.set_defaults(handler=cmd_gallery_bump)

    ainf = gal_sub.add_parser("ainf")
    ainf.add_argument("--n-max", type=int, default=40)
    ainf.add_argument("--p", type=int, default=3)
    ainf.add_argument("--threshold", type=float, default=1e3)
    common(ainf)
    ainf.set_defaults(handler=cmd_gallery_ainf)

    return parser


def _basename(args) -> str:
    parts = [args.command]
    for attr in ("dn_command", "algebra_command", "embed_command", "gallery_command"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return "-".join(parts)


def _config_to_argv(path: str) -> list[str]:
    record = _load_json(path)
    if "command" not in record:
        raise InputError(f"{path}: config needs a 'command' entry")
    argv = str(record["command"]).split()
    for key, value in record.items():
        if key == "command":
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.extend([flag, str(value)])
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            args = parser.parse_args(_config_to_argv(args.config))
        report = args.handler(args)
    except InputError as exc:
        print(f"opstar: input error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OverflowError) as exc:
        print(f"opstar: input error: {exc}", file=sys.stderr)
        return 1

    paths = report.write(args.out, _basename(args), plot=not args.no_plot)
    status = "PASS" if report.passed else "FAIL"
    for check in report.checks:
        mark = "ok" if check["passed"] else "FAIL"
        extra = f" value={check.get('value')}" if "value" in check else ""
        print(f"[{mark}] {check['name']}{extra}")
    print(f"{status}: report written to {paths['json']}")
    if report.overflow:
        return 3
    return 0 if report.passed else 2


if __name__ == "__main__":
    sys.exit(main())
