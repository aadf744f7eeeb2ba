"""Executable instances: torus spectra and the grid Fourier algebra,
Legendre/Nikolskii machinery, three-circle and Taylor-tail bounds for
polynomial samples of entire functions, the unit-extension
dominating-norm chains, bump-function interpolation, and the
smooth-boundary disc-algebra counterexample."""

from .torus import (
    TorusSpectrum,
    WEYL_BANDS,
    fourier_sobolev_coeffs,
    torus_space,
    torus_spectrum,
    weyl_ratios,
)
from .legendre import (
    gauss_legendre,
    legendre_eval,
    nikolskii_check,
    nikolskii_extremal_witness,
)
from .entire import (
    ellipse_boundary,
    hadamard_check,
    joukowski_ellipse,
    joukowski_point,
    sup_on_circle,
    sup_on_ellipse,
    sup_on_interval,
    taylor_tail_bound,
)
from .unitdn import kinf_unit_dn, kinf_unit_sweep, lambda_unit_dn, lambda_unit_sweep
from .bump import BumpFunction, bump_dn_check, standard_bump
from .ainf import ainf_counterexample, ainf_space, disc_poly_family

__all__ = [
    "TorusSpectrum",
    "WEYL_BANDS",
    "fourier_sobolev_coeffs",
    "torus_space",
    "torus_spectrum",
    "weyl_ratios",
    "gauss_legendre",
    "legendre_eval",
    "nikolskii_check",
    "nikolskii_extremal_witness",
    "ellipse_boundary",
    "hadamard_check",
    "joukowski_ellipse",
    "joukowski_point",
    "sup_on_circle",
    "sup_on_ellipse",
    "sup_on_interval",
    "taylor_tail_bound",
    "kinf_unit_dn",
    "kinf_unit_sweep",
    "lambda_unit_dn",
    "lambda_unit_sweep",
    "BumpFunction",
    "bump_dn_check",
    "standard_bump",
    "ainf_counterexample",
    "ainf_space",
    "disc_poly_family",
]
