"""Dense complex matrix kernels.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Vectorization stacks columns, so that ``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.
"""

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvalidState, NonHermitianInput

EPS_HERM = 1e-10
EPS_PSD = 1e-9


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite complex 2-d array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatch(f"{name} has non-finite entries")
    return m


def as_square(a, name="matrix"):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def dagger(a):
    return np.conj(np.transpose(a))


def op_norm(a):
    """Operator (spectral) norm."""
    a = np.asarray(a)
    if not a.any():
        return 0.0
    return float(np.linalg.norm(a, 2))


def hs_norm(a):
    return float(np.linalg.norm(a))


def is_hermitian(a, tol=EPS_HERM):
    a = np.asarray(a)
    scale = max(1.0, float(np.abs(a).sum(axis=1).max(initial=0.0)))
    return float(np.abs(a - dagger(a)).max(initial=0.0)) <= tol * scale


def check_hermitian(a, name="matrix", tol=EPS_HERM):
    a = as_square(a, name)
    if not is_hermitian(a, tol):
        raise NonHermitianInput(f"{name} is not Hermitian within {tol:g}")
    return a


def eigh(a, tol=EPS_HERM):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending."""
    a = check_hermitian(a, tol=tol)
    w, v = np.linalg.eigh((a + dagger(a)) / 2)
    return w, v


def matrix_exponential(m, t=1.0):
    """``exp(t*m)`` by scaling and squaring with Pade approximants."""
    m = as_square(m)
    return scipy.linalg.expm(t * m)


def trace_norm(a):
    """Sum of singular values."""
    a = as_square(a)
    return float(scipy.linalg.svdvals(a).sum())


def hs_inner(x, y):
    """Hilbert-Schmidt inner product ``tr(x^* y)``."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes differ: {x.shape} vs {y.shape}")
    return complex(np.vdot(x, y))


def partial_trace_second(x, n, r):
    """Trace out the second factor of ``C^n (x) C^r``.

    Index ``(a, i)`` of the product space maps to ``a*r + i``.
    """
    x = as_square(x)
    if x.shape[0] != n * r:
        raise DimensionMismatch(f"matrix of size {x.shape[0]} is not {n}*{r}")
    return np.einsum("aibi->ab", x.reshape(n, r, n, r))


def vec(x):
    return np.asarray(x).reshape(-1, order="F")


def unvec(v, d=None):
    v = np.asarray(v)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise DimensionMismatch(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape(d, d, order="F")


def check_density_matrix(rho, tol_herm=EPS_HERM, tol_psd=EPS_PSD):
    """Validate and return ``rho`` as a density matrix."""
    try:
        rho = check_hermitian(rho, "density matrix", tol_herm)
    except NonHermitianInput as exc:
        raise InvalidState(str(exc)) from None
    if abs(np.trace(rho) - 1) > tol_herm * rho.shape[0] * 10:
        raise InvalidState(f"trace {np.trace(rho).real:.12g} differs from 1")
    lam = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    if lam[0] < -tol_psd:
        raise InvalidState(f"negative eigenvalue {lam[0]:.3g}")
    return rho


def choi_matrix(channel, d):
    """Choi matrix ``sum_ij E_ij (x) channel(E_ij)`` of a linear map on d x d matrices."""
    c = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            c += np.kron(e, channel(e))
    return c


def superop_choi(superop, d):
    """Choi matrix of a column-stacking superoperator matrix."""
    return choi_matrix(lambda x: unvec(superop @ vec(x), d), d)
