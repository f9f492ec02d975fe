"""Random matrices.  Every function takes an explicit ``numpy.random.Generator``."""

import numpy as np


def ginibre(rng, n, m=None, size=()):
    m = n if m is None else m
    shape = (*np.atleast_1d(size).astype(int), n, m)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_unitaries(rng, n, size=()):
    """Haar-distributed unitaries from the QR of a Ginibre matrix.

    R's diagonal phases are divided out, otherwise the QR convention
    biases the distribution.
    """
    z = ginibre(rng, n, size=size)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phases = diag / np.abs(diag)
    return q * phases[..., None, :]


def random_hermitian(rng, n, scale=1.0):
    g = ginibre(rng, n)
    return scale * (g + g.conj().T) / 2


def random_density_matrix(rng, n, rank=None):
    g = ginibre(rng, n, rank or n)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_pure_state(rng, n):
    psi = ginibre(rng, n, 1)[:, 0]
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_observable(rng, n):
    """Complex n x n matrix normalised to unit operator norm."""
    a = ginibre(rng, n)
    return a / np.linalg.norm(a, 2)
