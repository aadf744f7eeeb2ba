"""Isometric transport of a Gram geometry into an ambient truncation.

At finite dimension every positive-definite Hermitian form G factors as
G = u^H u, so the source space with inner product G maps isometrically
onto ordinary coordinates by u.  Padding u into an ambient truncation of
larger dimension gives a map phi with

    phi^ phi = id   (phi^ is the adjoint against the source form, G^{-1} phi^H),
    phi phi^ a Hermitian idempotent of rank d on the ambient side,

and conjugation x -> phi x phi^ is then an injective multiplicative
*-map from operators on the source onto a corner of the ambient
operators, with compression z -> (phi phi^) z (phi phi^) projecting back
onto that corner.  ``full_pipeline`` composes this with left
multiplication on a structure-constant algebra and certifies every link
numerically.

Both the Hermitian square root and the triangular factor are accepted as
u; the choice is recorded.  Image coordinates occupy the first d ambient
slots by default, with an explicit placement option for stress-testing
the interaction with ambient weights.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from ._rng import complex_gaussian, make_rng
from .staralg import GramForm, StarAlgebraSpec, check_alpha, mult_operator

ALPHA_TOL = 1e-10  # admissibility threshold on the condition-alpha defect


def gram_factor(gram: GramForm, method: str = "cholesky") -> np.ndarray:
    """Square factor u with u^H u = G; triangular or Hermitian root."""
    if method == "cholesky":
        return gram.cholesky_factor()
    if method == "sqrt":
        return gram.sqrt_factor()
    raise ValueError(f"unknown factorization method {method!r}")


@dataclass(frozen=True, eq=False)
class IsometryWitness:
    """Coefficient array w (ambient_dim x source_dim) with w^H w = G."""

    w: np.ndarray
    gram: GramForm
    method: str
    placement: tuple[int, ...]

    @property
    def source_dim(self) -> int:
        return self.w.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.w.shape[0]

    def isometry_defect(self) -> float:
        """max |w^H w - G|; the defining property of the witness."""
        return float(np.max(np.abs(self.w.conj().T @ self.w - self.gram.matrix)))


def isometry_from_gram(
    gram: GramForm,
    ambient_dim: int,
    method: str = "cholesky",
    placement=None,
) -> IsometryWitness:
    """Witness whose image is a source-dim subspace of the ambient slots.

    placement: 0-based ambient row indices receiving the factor rows;
    defaults to the leading block.
    """
    d = gram.dim
    if ambient_dim < d:
        raise ValueError("ambient dimension must be at least the source dimension")
    if placement is None:
        placement = tuple(range(d))
    else:
        placement = tuple(int(p) for p in placement)
        if len(placement) != d or len(set(placement)) != d:
            raise ValueError("placement must list source_dim distinct ambient slots")
        if min(placement) < 0 or max(placement) >= ambient_dim:
            raise ValueError("placement index out of ambient range")
    u = gram_factor(gram, method)
    w = np.zeros((ambient_dim, d), dtype=complex)
    w[list(placement), :] = u
    return IsometryWitness(w, gram, method, placement)


def build_phi(wit: IsometryWitness) -> tuple[np.ndarray, np.ndarray]:
    """(phi, phi^): the padded factor and its source-form adjoint.

    phi^ = G^{-1} phi^H, computed by a linear solve; with it
    phi^ phi = id on the source and phi phi^ is the rank-d Hermitian
    idempotent picking out the image slots.
    """
    phi = wit.w
    phi_star = np.linalg.solve(wit.gram.matrix, phi.conj().T)
    return phi, phi_star


def embed_Phi(wit: IsometryWitness, x) -> np.ndarray:
    """Conjugation x -> phi x phi^ into the ambient truncation."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (wit.source_dim, wit.source_dim):
        raise ValueError("operator dimension does not match the witness source")
    phi, phi_star = build_phi(wit)
    return phi @ x @ phi_star


def projector_P(wit: IsometryWitness, z) -> np.ndarray:
    """Compression (phi phi^) z (phi phi^) onto the embedded corner."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (wit.ambient_dim, wit.ambient_dim):
        raise ValueError("operator dimension does not match the ambient truncation")
    phi, phi_star = build_phi(wit)
    pr = phi @ phi_star
    return pr @ z @ pr


@dataclass(frozen=True)
class EmbeddingReport:
    source_dim: int
    ambient_dim: int
    method: str
    gram_condition: float
    isometry_defect: float
    phi_star_phi_defect: float
    projector_idempotent_defect: float
    projector_hermitian_defect: float
    unit_to_projector_defect: float
    multiplicativity_defect: float
    involution_defect: float
    projector_fixes_image_defect: float
    injectivity_margin: float
    sampled_pairs: int

    def to_json(self) -> dict:
        return asdict(self)

    def max_defect(self) -> float:
        return max(
            self.isometry_defect,
            self.phi_star_phi_defect,
            self.projector_idempotent_defect,
            self.projector_hermitian_defect,
            self.unit_to_projector_defect,
            self.multiplicativity_defect,
            self.involution_defect,
            self.projector_fixes_image_defect,
        )


def full_pipeline(
    alg: StarAlgebraSpec,
    gram: GramForm,
    ambient_dim: int,
    seed: int = 0,
    samples: int = 20,
    method: str = "cholesky",
    placement=None,
) -> EmbeddingReport:
    """Compose x -> m_x -> phi m_x phi^ and certify each link.

    Requires a unital algebra and a form passing condition alpha to
    ALPHA_TOL, so that the source-form adjoint of m_x is m_{x*} and the
    composite is a *-map.  Defects are maxima over the sampled pairs.
    """
    if alg.unit is None:
        raise ValueError("pipeline needs a unital algebra")
    alpha_defect = check_alpha(alg, gram)
    if alpha_defect > ALPHA_TOL:
        raise ValueError(
            f"condition alpha defect {alpha_defect:.3e} exceeds {ALPHA_TOL:.1e}"
        )

    wit = isometry_from_gram(gram, ambient_dim, method=method, placement=placement)
    phi, phi_star = build_phi(wit)
    d = alg.dim

    eye_src = np.eye(d)
    phi_star_phi_defect = float(np.max(np.abs(phi_star @ phi - eye_src)))
    pr = phi @ phi_star
    projector_idem = float(np.max(np.abs(pr @ pr - pr)))
    projector_herm = float(np.max(np.abs(pr - pr.conj().T)))
    unit_defect = float(np.max(np.abs(embed_Phi(wit, mult_operator(alg, alg.unit)) - pr)))

    rng = make_rng(seed, 0xE4BED)
    mult_defect = 0.0
    invol_defect = 0.0
    fixes_defect = 0.0
    for _ in range(samples):
        x = complex_gaussian(rng, d)
        y = complex_gaussian(rng, d)
        gx = embed_Phi(wit, mult_operator(alg, x))
        gy = embed_Phi(wit, mult_operator(alg, y))
        gxy = embed_Phi(wit, mult_operator(alg, alg.product(x, y)))
        scale = max(1.0, float(np.max(np.abs(gx))), float(np.max(np.abs(gy))))
        mult_defect = max(mult_defect, float(np.max(np.abs(gx @ gy - gxy))) / scale)
        gstar = embed_Phi(wit, mult_operator(alg, alg.star(x)))
        invol_defect = max(invol_defect, float(np.max(np.abs(gstar - gx.conj().T))) / scale)
        fixes_defect = max(fixes_defect, float(np.max(np.abs(projector_P(wit, gx) - gx))) / scale)

    # smallest singular value of the composite linear map x -> phi m_x phi^
    columns = np.stack(
        [embed_Phi(wit, mult_operator(alg, _basis(d, i))).ravel() for i in range(d)],
        axis=1,
    )
    margin = float(np.linalg.svd(columns, compute_uv=False)[-1])

    return EmbeddingReport(
        source_dim=d,
        ambient_dim=ambient_dim,
        method=method,
        gram_condition=gram.condition_number,
        isometry_defect=wit.isometry_defect(),
        phi_star_phi_defect=phi_star_phi_defect,
        projector_idempotent_defect=projector_idem,
        projector_hermitian_defect=projector_herm,
        unit_to_projector_defect=unit_defect,
        multiplicativity_defect=mult_defect,
        involution_defect=invol_defect,
        projector_fixes_image_defect=fixes_defect,
        injectivity_margin=margin,
        sampled_pairs=samples,
    )


def _basis(dim: int, i: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[i] = 1.0
    return e
