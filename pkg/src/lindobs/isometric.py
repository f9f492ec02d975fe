"""The isometric subspace K of a dynamical semigroup and its HS projector.

K is the set of Hilbert-Schmidt operators on which both ``T_t`` and its
adjoint act isometrically for all times.  Because ``D = L + L^dagger`` is
negative semidefinite for an HS-contractive semigroup,

    d/dt ||T_t x||_2^2 = <T_t x, D T_t x>,

so K is the largest subspace of ``ker D`` invariant under ``L`` and
``L^dagger``.  It is found by shrinking an orthonormal basis of ``ker D``
until both generators map its span into itself.

Only this generator-level characterization is computed.  Isometry at
finite times is checked by :func:`verify_unitary_restriction` on sampled
``t``; no formal proof of the all-``t`` statement is attempted here.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ModelMismatch, NumericalRankAmbiguity
from .lindblad import check_environment_induced
from .operators import dagger, matrix_exponential, unvec, vec

logger = logging.getLogger(__name__)

EPS_RANK = 1e-9


def _split_rank(values, scale, eps, what):
    """Indices of ``values`` that count as zero relative to ``scale``.

    Values inside the band ``[0.1*eps, 10*eps] * scale`` are refused.
    """
    values = np.abs(np.asarray(values, dtype=float))
    if scale == 0:
        return np.arange(len(values))
    rel = values / scale
    ambiguous = (rel >= 0.1 * eps) & (rel <= 10 * eps)
    if ambiguous.any():
        band = tuple(sorted(float(v) for v in rel[ambiguous]))
        raise NumericalRankAmbiguity(
            f"{what}: relative singular values {band} straddle the rank threshold {eps:g}", band
        )
    return np.flatnonzero(rel < eps)


def hermitian_hs_basis(d):
    """Orthonormal Hermitian basis of the d x d matrices (as columns of vec'd matrices)."""
    cols = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1
        cols.append(vec(e))
    s = 1 / np.sqrt(2)
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = e[j, i] = s
            cols.append(vec(e))
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = -1j * s
            e[j, i] = 1j * s
            cols.append(vec(e))
    return np.array(cols).T


def _canonical_basis(b, d):
    """Deterministic Hermitian orthonormal basis for the span of ``b``'s columns."""
    m = b.shape[1]
    if m == 0:
        return b
    y = b @ (dagger(b) @ hermitian_hs_basis(d))
    real = np.vstack([y.real, y.imag])
    u, s, _ = np.linalg.svd(real, full_matrices=False)
    rank = int(np.sum(s > EPS_RANK * max(s[0], 1e-300)))
    if rank != m:
        logger.warning("isometric subspace is not adjoint-closed (real rank %d vs %d); keeping raw basis", rank, m)
        return b
    u = u[:, :m]
    n = d * d
    out = u[:n] + 1j * u[n:]
    pivots = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[pivots, np.arange(m)])
    return out * signs


@dataclass(frozen=True, eq=False)
class IsometricSubspace:
    """Orthonormal (HS) basis of K plus bookkeeping."""

    dim: int
    vectors: np.ndarray  # d^2 x m, columns are vec(x_alpha)
    model_fingerprint: str
    iterations: tuple = ()

    @property
    def size(self):
        return self.vectors.shape[1]

    @property
    def dim_hs(self):
        return self.dim * self.dim

    @property
    def basis(self):
        return [unvec(self.vectors[:, a], self.dim) for a in range(self.size)]

    @property
    def projector(self):
        """Matrix of the orthogonal HS projector onto K."""
        return self.vectors @ dagger(self.vectors)

    def project(self, phi):
        phi = np.asarray(phi, dtype=complex)
        if phi.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"operator has shape {phi.shape}, expected {(self.dim, self.dim)}")
        v = self.vectors
        return unvec(v @ (dagger(v) @ vec(phi)), self.dim)


def compute_isometric_subspace(lhat, gate, eps_rank=EPS_RANK):
    """Compute K for an environment-induced generator.

    ``gate`` is the result of :func:`lindobs.lindblad.check_environment_induced`
    (or a model, in which case the gate is evaluated here).
    """
    if not hasattr(gate, "flag"):
        gate = check_environment_induced(gate)
    gate.require()
    d = lhat.dim
    n = d * d
    L = lhat.matrix
    Ld = dagger(L)
    dmat = L + Ld
    dmat = (dmat + dagger(dmat)) / 2
    lam, vecs = np.linalg.eigh(dmat)
    scale = float(np.abs(lam).max(initial=0.0))
    b = vecs[:, _split_rank(lam, scale, eps_rank, "kernel of L + L^dagger")]
    dims = [b.shape[1]]
    l_scale = float(np.linalg.norm(L, 2)) if L.any() else 0.0
    for _ in range(n):
        if b.shape[1] == 0:
            break
        comp = np.eye(n) - b @ dagger(b)
        resid = np.vstack([comp @ L @ b, comp @ Ld @ b])
        _, s, vh = np.linalg.svd(resid)
        s_full = np.zeros(b.shape[1])
        s_full[: len(s)] = s
        keep = _split_rank(s_full, l_scale, eps_rank, "invariance residual")
        if len(keep) == b.shape[1]:
            break
        b = b @ dagger(vh)[:, keep]
        b, _ = np.linalg.qr(b)
        dims.append(b.shape[1])
    return IsometricSubspace(d, _canonical_basis(b, d), lhat.fingerprint, tuple(dims))


def project_hs(subspace, phi):
    """Orthogonal HS projection of ``phi`` onto K."""
    return subspace.project(phi)


@dataclass(frozen=True)
class RestrictionCheck:
    t: float
    norm_drift: float
    dual_norm_drift: float
    invariance_defect: float

    def passed(self, tol=1e-8):
        return max(self.norm_drift, self.dual_norm_drift, self.invariance_defect) <= tol


def verify_unitary_restriction(lhat, subspace, times=(0.1, 0.7, 2.0)):
    """Per time: worst basis-norm drift under ``T_t`` and ``T_t^*`` and leakage out of K."""
    if subspace.model_fingerprint != lhat.fingerprint:
        raise ModelMismatch("isometric subspace was computed for a different model")
    v = subspace.vectors
    out = []
    for t in times:
        fwd = matrix_exponential(lhat.matrix, t) @ v
        bwd = matrix_exponential(dagger(lhat.matrix), t) @ v
        drift = np.abs(np.linalg.norm(fwd, axis=0) - 1).max(initial=0.0)
        dual_drift = np.abs(np.linalg.norm(bwd, axis=0) - 1).max(initial=0.0)
        leak = fwd - v @ (dagger(v) @ fwd)
        defect = np.linalg.norm(leak, axis=0).max(initial=0.0)
        out.append(RestrictionCheck(float(t), float(drift), float(dual_drift), float(defect)))
    return out


def sweeping_rate(lhat, subspace):
    """Smallest ``|Re lambda|`` of the generator restricted to the complement of K.

    Returns ``inf`` when K is the whole space.
    """
    v = subspace.vectors
    n = subspace.dim_hs
    if v.shape[1] == n:
        return float("inf")
    comp = np.eye(n) - v @ dagger(v)
    w, u = np.linalg.eigh((comp + dagger(comp)) / 2)
    q = u[:, w > 0.5]
    lam = np.linalg.eigvals(dagger(q) @ lhat.matrix @ q)
    return float(np.abs(lam.real).min())
