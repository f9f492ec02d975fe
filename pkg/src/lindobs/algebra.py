"""Block structure of the algebra of effective observables.

A finite-dimensional unital *-algebra is a direct sum of factors, each
unitarily equivalent to ``B(C^N) (x) I_r``.  The decomposition proceeds as

1. the center is the null space of the commutator map restricted to M;
2. a random self-adjoint central element separates the minimal central
   projectors ``E_kn`` through its eigenvalue clusters;
3. ``N^2`` is the dimension of ``E M E`` and ``r = rank(E) / N``;
4. a generic Hermitian block element has ``N`` eigenvalue clusters of
   size ``r``, giving minimal projectors; partial isometries between them
   come from polar decompositions of ``f_a m f_1``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CenterSeparationFailure, NonIntegralStructure, NotAnAlgebra
from .isometric import EPS_RANK, _split_rank
from .operators import dagger

CLOSURE_TOL = 1e-8
CLUSTER_GAP = 1e-6
MAX_RETRIES = 8


@dataclass(frozen=True, eq=False)
class AlgebraBasis:
    """Hermitian, HS-orthonormal basis of a unital *-algebra of d x d matrices."""

    dim: int
    elements: np.ndarray  # (m, d, d)
    closure_defect: float = 0.0

    @property
    def size(self):
        return self.elements.shape[0]

    @property
    def vectors(self):
        return self.elements.reshape(self.size, -1).T

    def project(self, a):
        """HS-orthogonal projection onto the span."""
        e = self.elements
        coeff = np.einsum("aij,ij->a", e.conj(), a)
        return np.einsum("a,aij->ij", coeff, e)


def _span_residuals(basis_rows, mats):
    """HS distance of each matrix in ``mats`` from the span of orthonormal ``basis_rows``."""
    flat = mats.reshape(mats.shape[0], -1)
    coeff = flat @ basis_rows.conj().T
    return np.linalg.norm(flat - coeff @ basis_rows, axis=1)


def extract_algebra(subspace, tol=CLOSURE_TOL, chunk=4096):
    """Verify that K is a unital *-algebra and return its basis.

    Raises :class:`NotAnAlgebra` if products, adjoints or the identity fall
    outside the span by more than ``tol``.
    """
    d = subspace.dim
    elements = np.array(subspace.basis)
    m = elements.shape[0]
    if m == 0:
        raise NotAnAlgebra("isometric subspace is empty")
    rows = elements.reshape(m, -1)
    defect = float(_span_residuals(rows, np.conj(np.transpose(elements, (0, 2, 1)))).max())
    ident = np.eye(d, dtype=complex)[None] / np.sqrt(d)
    defect = max(defect, float(_span_residuals(rows, ident)[0]))
    pairs = [(a, b) for a in range(m) for b in range(m)]
    for start in range(0, len(pairs), chunk):
        idx = np.array(pairs[start : start + chunk])
        prods = np.einsum("nij,njk->nik", elements[idx[:, 0]], elements[idx[:, 1]])
        defect = max(defect, float(_span_residuals(rows, prods).max()))
        if defect > tol:
            break
    if defect > tol:
        raise NotAnAlgebra(f"closure defect {defect:.3g} exceeds {tol:g}")
    return AlgebraBasis(d, elements, defect)


@dataclass(frozen=True, eq=False)
class FactorBlock:
    """One factor ``E M E ~ B(C^N) (x) I_r`` with its isometry ``W`` (d x N*r)."""

    k: int
    n: int
    multiplicity: int
    minimal_dim: int
    unit_projector: np.ndarray
    isometry: np.ndarray

    @property
    def label(self):
        return (self.k, self.n)

    @property
    def rank(self):
        return self.multiplicity * self.minimal_dim

    # short aliases matching the usual notation
    @property
    def N(self):  # noqa: N802
        return self.multiplicity

    @property
    def r(self):
        return self.minimal_dim


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    dim: int
    blocks: tuple
    dim_K: int  # noqa: N815
    seed: int = None
    center_dim: int = field(default=0)

    @property
    def unit(self):
        return sum((b.unit_projector for b in self.blocks), np.zeros((self.dim, self.dim), dtype=complex))

    @property
    def complement(self):
        return np.eye(self.dim) - self.unit

    @property
    def linear_dim(self):
        return sum(b.multiplicity**2 for b in self.blocks)


def _clusters(values, gap_tol):
    """Split ascending ``values`` wherever consecutive gaps exceed ``gap_tol * spread``."""
    spread = values[-1] - values[0]
    if spread <= 0:
        return [np.arange(len(values))]
    cuts = np.flatnonzero(np.diff(values) > gap_tol * spread) + 1
    return np.split(np.arange(len(values)), cuts)


def center_basis(alg, eps_rank=EPS_RANK, chunk=64):
    """Hermitian basis (as a (c, d, d) array) of the center of ``alg``.

    Solves ``sum_b c_b [e_b, e_a] = 0`` for all ``a`` over real ``c``.  The
    tall system is reduced chunk by chunk to its triangular QR factor,
    which has the same singular values.
    """
    e = alg.elements
    m = alg.size
    tri = np.zeros((0, m))
    for start in range(0, m, chunk):
        ea = e[start : start + chunk]
        # comm[a, b] = [e_b, e_a]
        comm = np.einsum("bij,ajk->abik", e, ea) - np.einsum("aij,bjk->abik", ea, e)
        system = comm.transpose(0, 2, 3, 1).reshape(-1, m)
        tri = np.linalg.qr(np.vstack([tri, system.real, system.imag]), mode="r")
    _, s, vh = np.linalg.svd(tri)
    s_full = np.zeros(m)
    s_full[: len(s)] = s
    null = vh[_split_rank(s_full, 1.0, eps_rank, "center of the algebra")].T
    return np.einsum("bc,bij->cij", null, e)


def _rank(mat, eps):
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return len(s) - len(_split_rank(s, s[0], eps, "block dimension"))


def _is_unital(alg, tol=CLOSURE_TOL):
    ident = np.eye(alg.dim, dtype=complex) / np.sqrt(alg.dim)
    return np.linalg.norm(ident - alg.project(ident)) <= tol


def _central_projectors(alg, center, rng):
    """Minimal central projectors and orthonormal bases of their ranges.

    For a non-unital algebra the zero eigenspace of every central element is
    the complement of the unit and is dropped.
    """
    c = center.shape[0]
    unital = _is_unital(alg)
    if c == 1 and unital:
        return [np.eye(alg.dim, dtype=complex)], [np.eye(alg.dim, dtype=complex)]
    expected = c if unital else c + 1
    for _ in range(MAX_RETRIES):
        z = np.einsum("c,cij->ij", rng.standard_normal(c), center)
        lam, v = np.linalg.eigh((z + dagger(z)) / 2)
        groups = _clusters(lam, CLUSTER_GAP)
        if len(groups) != expected:
            continue
        if not unital:
            groups.pop(int(np.argmin([abs(lam[g].mean()) for g in groups])))
        ranges = [v[:, g] for g in groups]
        return [q @ dagger(q) for q in ranges], ranges
    raise CenterSeparationFailure(f"could not separate {c} central projectors in {MAX_RETRIES} attempts")


def _matrix_units(alg, q, n_mult, r, rng):
    """Isometry ``W`` (d x N*r) with ``W^* M W = B(C^N) (x) I_r`` on one block with range basis ``q``."""
    e = alg.elements
    block = np.einsum("ia,mij,jb->mab", q.conj(), e, q)
    if n_mult == 1:
        return q
    for _ in range(MAX_RETRIES):
        h = np.einsum("m,mab->ab", rng.standard_normal(alg.size), block)
        lam, f = np.linalg.eigh((h + dagger(h)) / 2)
        groups = _clusters(lam, CLUSTER_GAP)
        if len(groups) != n_mult or any(len(g) != r for g in groups):
            continue
        frames = [f[:, g] for g in groups]
        coeff = rng.standard_normal(alg.size) + 1j * rng.standard_normal(alg.size)
        mixer = np.einsum("m,mab->ab", coeff, block)
        cols = [frames[0]]
        for fa in frames[1:]:
            x = dagger(fa) @ mixer @ frames[0]
            u, s, vh = np.linalg.svd(x)
            if s[-1] <= CLUSTER_GAP * max(s[0], 1e-300):
                break
            cols.append(fa @ (u @ vh))
        else:
            return q @ np.hstack(cols)
    raise NonIntegralStructure(f"could not build {n_mult} matrix units of size {r}")


def decompose_structure(alg, seed=0, dim_K=None, eps_rank=EPS_RANK):  # noqa: N803
    """Split a *-algebra into factor blocks ``(E_kn, N, r, W)``.

    Blocks are labelled by ``k`` over distinct ``r`` in ascending order and by
    ``n`` in order of the first basis index on which ``E_kn`` is supported
    (ties: larger diagonal weight there first).  A non-unital algebra yields
    blocks whose units do not sum to the identity.
    All randomness comes from ``numpy.random.default_rng(seed)``.
    """
    rng = np.random.default_rng(seed)
    d = alg.dim
    center = center_basis(alg, eps_rank)
    projectors, ranges = _central_projectors(alg, center, rng)
    raw = []
    for proj, q in zip(projectors, ranges):
        rank = q.shape[1]
        compressed = np.einsum("ij,mjk,kl->mil", proj, alg.elements, proj).reshape(alg.size, -1)
        lin = _rank(compressed, eps_rank)
        n_mult = int(round(np.sqrt(lin)))
        if n_mult < 1 or n_mult * n_mult != lin or rank % n_mult:
            raise NonIntegralStructure(f"block of rank {rank} has linear dimension {lin}")
        r = rank // n_mult
        w = _matrix_units(alg, q, n_mult, r, rng)
        diag = np.real(np.diagonal(proj))
        first = int(np.flatnonzero(diag > 1e-8)[0])
        raw.append((r, (first, -round(float(diag[first]), 6)), n_mult, proj, w))
    raw.sort(key=lambda item: (item[0], item[1]))
    r_values = sorted({item[0] for item in raw})
    blocks = []
    counters = {}
    for r, _, n_mult, proj, w in raw:
        k = r_values.index(r) + 1
        counters[k] = counters.get(k, 0) + 1
        blocks.append(FactorBlock(k, counters[k], n_mult, r, proj, w))
    if sum(b.multiplicity**2 for b in blocks) != alg.size:
        raise NonIntegralStructure("block dimensions do not add up to the algebra dimension")
    total = sum(b.rank for b in blocks)
    if total > d or (total != d and _is_unital(alg)):
        raise NonIntegralStructure(f"block ranks sum to {total}, dimension is {d}")
    return AlgebraStructure(d, tuple(blocks), alg.size if dim_K is None else dim_K, seed, center.shape[0])


def gauge_group_summary(structure):
    """``["U(r)", ...]`` for each block with ``r > 1``."""
    return [f"U({b.minimal_dim})" for b in structure.blocks if b.minimal_dim > 1]


def structure_from_subspace(subspace, seed=0):
    return decompose_structure(extract_algebra(subspace), seed=seed, dim_K=subspace.size)
