"""Finite-dimensional *-algebras given by structure constants.

A spec carries the structure tensor c (e_i e_j = sum_k c[i,j,k] e_k), a
conjugate-linear involution stored as a matrix S acting by
x* = S conj(x), and an optional unit.  Construction validates
associativity, involutivity, anti-multiplicativity, and the unit law;
magnitudes of the defects matter because truncations of infinite algebras
satisfy the axioms only approximately, so the condition checks below
return max-abs defects rather than booleans.

The four conditions checked against a positive Hermitian form G are:
  alpha:  (x y, z) = (y, x* z)
  beta:   left multiplications are G-bounded (the bound itself is the report)
  gamma:  (y*, x*) = (x, y)
  delta:  the span of all products has full rank

``alpha_gram`` solves the linear constraint system of condition alpha
over Hermitian forms and picks a well-conditioned positive-definite
interior point, optionally randomized within the solution cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .opalg import spectral_norm

VALIDATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GramForm:
    """Positive-definite Hermitian form (x, y) = y^H G x on coordinates."""

    matrix: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", g)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("Gram matrix must be square")
        scale = max(float(np.max(np.abs(g))), 1.0)
        if float(np.max(np.abs(g - g.conj().T))) > VALIDATION_TOL * scale:
            raise ValueError("Gram matrix must be Hermitian")
        if self.min_eigenvalue <= 0.0:
            raise ValueError("Gram matrix must be positive-definite")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def min_eigenvalue(self) -> float:
        h = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.min(np.linalg.eigvalsh(h)))

    @cached_property
    def condition_number(self) -> float:
        h = 0.5 * (self.matrix + self.matrix.conj().T)
        ev = np.linalg.eigvalsh(h)
        return float(ev[-1] / ev[0])

    def inner(self, x, y) -> complex:
        """(x, y), linear in x, conjugate-linear in y."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return complex(y.conj() @ (self.matrix @ x))

    def norm(self, x) -> float:
        v = self.inner(x, x).real
        return math.sqrt(max(v, 0.0))

    def cholesky_factor(self) -> np.ndarray:
        """Upper-triangular u with u^H u = G."""
        return np.linalg.cholesky(self.matrix).conj().T

    def sqrt_factor(self) -> np.ndarray:
        """Hermitian positive root u = G^(1/2), u^H u = u u = G."""
        ev, vec = np.linalg.eigh(0.5 * (self.matrix + self.matrix.conj().T))
        return (vec * np.sqrt(ev)) @ vec.conj().T


@dataclass(frozen=True, eq=False)
class StarAlgebraSpec:
    """dim, structure tensor, involution matrix, optional unit vector."""

    structure: np.ndarray
    involution: np.ndarray
    unit: np.ndarray | None = None
    label: str = ""

    def __post_init__(self):
        c = np.asarray(self.structure, dtype=complex)
        s = np.asarray(self.involution, dtype=complex)
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "involution", s)
        if self.unit is not None:
            object.__setattr__(self, "unit", np.asarray(self.unit, dtype=complex))
        d = self.dim
        if c.shape != (d, d, d):
            raise ValueError("structure tensor must be dim x dim x dim")
        if s.shape != (d, d):
            raise ValueError("involution matrix must be dim x dim")
        problem = self.validation_error()
        if problem is not None:
            raise ValueError(problem)

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def validation_error(self) -> str | None:
        """First violated invariant as a message naming the offending
        basis tuple, or None when all hold to VALIDATION_TOL."""
        c = self.structure
        s = self.involution
        d = self.dim
        scale = max(float(np.max(np.abs(c))), 1.0)
        tol = VALIDATION_TOL * scale * scale

        left = np.einsum("ijm,mkl->ijkl", c, c)
        right = np.einsum("jkm,iml->ijkl", c, c)
        defect = np.abs(left - right)
        if float(defect.max()) > tol:
            i, j, k = np.unravel_index(int(np.argmax(defect.max(axis=3))), (d, d, d))
            return (
                f"associativity fails at basis triple (e_{i+1}, e_{j+1}, e_{k+1}): "
                f"defect {float(defect[i, j, k].max()):.3e}"
            )

        invol2 = np.abs(s @ s.conj() - np.eye(d))
        if float(invol2.max()) > VALIDATION_TOL * max(float(np.max(np.abs(s))) ** 2, 1.0):
            i, j = np.unravel_index(int(np.argmax(invol2)), (d, d))
            return f"involution is not involutive at entry ({i+1}, {j+1})"

        # (e_i e_j)* = e_j* e_i*
        lhs = np.einsum("pk,ijk->ijp", s, c.conj())
        rhs = np.einsum("pj,qi,pqk->ijk", s, s, c)
        anti = np.abs(lhs - rhs)
        if float(anti.max()) > tol * max(float(np.max(np.abs(s))) ** 2, 1.0):
            i, j = np.unravel_index(int(np.argmax(anti.max(axis=2))), (d, d))
            return f"involution is not anti-multiplicative at pair (e_{i+1}, e_{j+1})"

        if self.unit is not None:
            u = self.unit
            left_u = np.einsum("i,ijk->jk", u, c) - np.eye(d)
            right_u = np.einsum("j,ijk->ik", u, c) - np.eye(d)
            if float(np.max(np.abs(left_u))) > tol or float(np.max(np.abs(right_u))) > tol:
                return "declared unit does not act as identity"
        return None

    def product(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def star(self, x) -> np.ndarray:
        return self.involution @ np.conj(np.asarray(x, dtype=complex))

    def to_json(self) -> dict:
        def cplx(a):
            a = np.asarray(a, dtype=complex)
            return np.stack([a.real, a.imag], axis=-1).tolist()

        return {
            "dim": self.dim,
            "unit": None if self.unit is None else cplx(self.unit),
            "structure": cplx(self.structure),
            "involution": cplx(self.involution),
        }

    @classmethod
    def from_json(cls, record: dict, label: str = "") -> "StarAlgebraSpec":
        def decode(node, path):
            a = np.asarray(node, dtype=float)
            if a.shape[-1] != 2:
                raise ValueError(f"{path}: complex entries must be [re, im] pairs")
            return a[..., 0] + 1j * a[..., 1]

        d = int(record["dim"])
        c = decode(record["structure"], "structure")
        s = decode(record["involution"], "involution")
        if c.shape != (d, d, d):
            raise ValueError(f"structure: expected shape ({d},{d},{d},2)")
        if s.shape != (d, d):
            raise ValueError(f"involution: expected shape ({d},{d},2)")
        unit = None
        if record.get("unit") is not None:
            unit = decode(record["unit"], "unit")
            if unit.shape != (d,):
                raise ValueError(f"unit: expected shape ({d},2)")
        return cls(c, s, unit, label=label)


def mult_operator(alg: StarAlgebraSpec, x) -> np.ndarray:
    """Matrix of the left multiplication y -> x y in the basis."""
    x = np.asarray(x, dtype=complex)
    if x.size != alg.dim:
        raise ValueError("coordinate vector has wrong dimension")
    return np.einsum("i,ijk->kj", x, alg.structure)


def check_alpha(alg: StarAlgebraSpec, gram: GramForm) -> float:
    """max over basis triples of |(e_i e_j, e_k) - (e_j, e_i* e_k)|."""
    if gram.dim != alg.dim:
        raise ValueError("algebra and Gram dimensions differ")
    g = gram.matrix
    worst = 0.0
    for i in range(alg.dim):
        m_i = mult_operator(alg, _basis(alg.dim, i))
        m_istar = mult_operator(alg, alg.star(_basis(alg.dim, i)))
        worst = max(worst, float(np.max(np.abs(g @ m_i - m_istar.conj().T @ g))))
    return worst


def check_beta(alg: StarAlgebraSpec, gram: GramForm) -> list[float]:
    """G-operator norm of each basis left multiplication."""
    if gram.dim != alg.dim:
        raise ValueError("algebra and Gram dimensions differ")
    u = gram.cholesky_factor()
    u_inv = np.linalg.inv(u)
    return [
        spectral_norm(u @ mult_operator(alg, _basis(alg.dim, i)) @ u_inv)
        for i in range(alg.dim)
    ]


def mult_bound(alg: StarAlgebraSpec, gram: GramForm, x) -> float:
    """G-operator norm of left multiplication by an arbitrary element."""
    u = gram.cholesky_factor()
    return spectral_norm(u @ mult_operator(alg, x) @ np.linalg.inv(u))


def check_gamma(alg: StarAlgebraSpec, gram: GramForm) -> float:
    """max over basis pairs of |(e_j*, e_i*) - (e_i, e_j)|."""
    if gram.dim != alg.dim:
        raise ValueError("algebra and Gram dimensions differ")
    g = gram.matrix
    s = alg.involution
    return float(np.max(np.abs(s.conj().T @ g @ s - g.T)))


def check_delta(alg: StarAlgebraSpec) -> bool:
    """True iff the span of all basis products has full rank."""
    d = alg.dim
    products = alg.structure.reshape(d * d, d)
    return int(np.linalg.matrix_rank(products, tol=1e-10)) == d


def projection_Q(alg: StarAlgebraSpec, phi) -> np.ndarray:
    """phi -> left multiplication by phi(unit); fixes every m_x and is
    idempotent as a map on operators."""
    if alg.unit is None:
        raise ValueError("projection needs a unital algebra")
    phi = np.asarray(phi, dtype=complex)
    return mult_operator(alg, phi @ alg.unit)


def _basis(dim: int, i: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[i] = 1.0
    return e


def _hermitian_basis(d: int) -> list[np.ndarray]:
    out = []
    for j in range(d):
        b = np.zeros((d, d), dtype=complex)
        b[j, j] = 1.0
        out.append(b)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for j in range(d):
        for k in range(j + 1, d):
            b = np.zeros((d, d), dtype=complex)
            b[j, k] = inv_sqrt2
            b[k, j] = inv_sqrt2
            out.append(b)
            b = np.zeros((d, d), dtype=complex)
            b[j, k] = 1j * inv_sqrt2
            b[k, j] = -1j * inv_sqrt2
            out.append(b)
    return out


def alpha_gram_space(alg: StarAlgebraSpec) -> list[np.ndarray]:
    """Hermitian basis of the linear solution space of condition alpha.

    Condition alpha for all elements is equivalent to
    G m_i = (m_{i*})^H G for every basis generator; that is a real-linear
    system over Hermitian matrices solved here by SVD nullspace.
    """
    d = alg.dim
    herm = _hermitian_basis(d)
    mults = [mult_operator(alg, _basis(d, i)) for i in range(d)]
    mults_star = [mult_operator(alg, alg.star(_basis(d, i))) for i in range(d)]
    cols = []
    for b in herm:
        rows = []
        for m_i, ms_i in zip(mults, mults_star):
            r = b @ m_i - ms_i.conj().T @ b
            rows.append(r.ravel().real)
            rows.append(r.ravel().imag)
        cols.append(np.concatenate(rows))
    a = np.stack(cols, axis=1)
    _, sv, vt = np.linalg.svd(a, full_matrices=True)
    tol = (sv[0] if len(sv) else 0.0) * 1e-10 + 1e-14
    rank = int(np.sum(sv > tol))
    null = vt[rank:].T  # columns span the solution space
    basis = []
    for c in null.T:
        h = sum(float(cc) * b for cc, b in zip(c, herm))
        basis.append(h)
    return basis


def alpha_gram(
    alg: StarAlgebraSpec,
    rng: np.random.Generator | None = None,
    max_tries: int = 200,
) -> GramForm:
    """A positive-definite Hermitian form satisfying condition alpha.

    Picks the projection of the identity onto the solution space when that
    is positive-definite (it is for the shipped algebra families), with an
    optional seeded perturbation inside the cone; otherwise falls back to
    random search over the solution space.
    """
    basis = alpha_gram_space(alg)
    if not basis:
        raise ValueError("condition alpha admits no Hermitian solutions")

    def assemble(coeffs):
        return sum(float(c) * b for c, b in zip(coeffs, basis))

    # orthonormal basis under the Frobenius pairing by construction
    ident = np.eye(alg.dim, dtype=complex)
    proj_coeffs = np.array([np.real(np.vdot(b, ident)) for b in basis])
    candidate = assemble(proj_coeffs)
    ev = np.linalg.eigvalsh(0.5 * (candidate + candidate.conj().T))
    if ev[0] <= 0.0:
        best = None
        search = rng if rng is not None else np.random.default_rng(0)
        for _ in range(max_tries):
            coeffs = search.standard_normal(len(basis))
            h = assemble(coeffs)
            if np.trace(h).real < 0:
                h = -h
            ev_try = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
            score = ev_try[0] / max(abs(ev_try[-1]), 1e-300)
            if best is None or score > best[0]:
                best = (score, h, ev_try)
        if best is None or best[2][0] <= 0.0:
            raise ValueError("no positive-definite form found in the alpha cone")
        candidate, ev = best[1], best[2]

    if rng is not None:
        pert_coeffs = rng.standard_normal(len(basis))
        pert = assemble(pert_coeffs)
        pnorm = spectral_norm(pert)
        if pnorm > 0:
            eps = 0.4 * float(ev[0]) / pnorm
            candidate = candidate + eps * pert
    candidate = 0.5 * (candidate + candidate.conj().T)
    candidate = candidate / np.linalg.eigvalsh(candidate)[0]
    return GramForm(candidate)


# ---------------------------------------------------------------------------
# shipped algebra families


def diagonal_algebra(dim: int) -> StarAlgebraSpec:
    """e_i e_j = delta_ij e_i with entrywise conjugation; unit = (1,..,1)."""
    c = np.zeros((dim, dim, dim), dtype=complex)
    for i in range(dim):
        c[i, i, i] = 1.0
    return StarAlgebraSpec(c, np.eye(dim), np.ones(dim), label=f"diagonal-{dim}")


def cyclic_group_algebra(order: int) -> StarAlgebraSpec:
    """Group algebra of Z/order: e_a e_b = e_{a+b}, e_a* = e_{-a}."""
    c = np.zeros((order, order, order), dtype=complex)
    s = np.zeros((order, order), dtype=complex)
    for a in range(order):
        s[(-a) % order, a] = 1.0
        for b in range(order):
            c[a, b, (a + b) % order] = 1.0
    unit = np.zeros(order, dtype=complex)
    unit[0] = 1.0
    return StarAlgebraSpec(c, s, unit, label=f"cyclic-{order}")


def convolution_algebra(num_freq: int) -> StarAlgebraSpec:
    """Cyclic convolution on centered frequencies -K..K.

    Sampling trigonometric polynomials on the 2K+1 point grid makes the
    pointwise product of functions correspond exactly to this wrapped
    convolution of coefficients; the involution conjugates and reflects
    the frequency index.
    """
    m = 2 * num_freq + 1
    c = np.zeros((m, m, m), dtype=complex)
    s = np.zeros((m, m), dtype=complex)

    def pos(freq):
        return ((freq + num_freq) % m + m) % m

    for a in range(-num_freq, num_freq + 1):
        s[pos(-a), pos(a)] = 1.0
        for b in range(-num_freq, num_freq + 1):
            wrapped = (a + b + num_freq) % m - num_freq
            c[pos(a), pos(b), pos(wrapped)] = 1.0
    unit = np.zeros(m, dtype=complex)
    unit[pos(0)] = 1.0
    return StarAlgebraSpec(c, s, unit, label=f"convolution-{num_freq}")
