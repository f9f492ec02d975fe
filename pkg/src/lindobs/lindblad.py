"""Lindblad models, their generators, and the environment-induced gate."""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotEnvironmentInduced
from .operators import EPS_HERM, EPS_PSD, as_square, check_hermitian, dagger, unvec, vec

VECTORIZATION = "column-stacking"


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """Hamiltonian plus a finite list of jump operators on ``C^dim``.

    Validation happens in ``__post_init__``; arrays are copied and made
    read-only so a model can be shared freely.
    """

    hamiltonian: np.ndarray
    jumps: tuple = ()
    label: str = ""
    herm_tol: float = field(default=EPS_HERM, repr=False)

    def __post_init__(self):
        h = check_hermitian(self.hamiltonian, "hamiltonian", self.herm_tol).copy()
        d = h.shape[0]
        jumps = []
        for j, v in enumerate(self.jumps):
            v = as_square(v, f"jumps[{j}]").copy()
            if v.shape != (d, d):
                raise DimensionMismatch(f"jumps[{j}] has shape {v.shape}, expected {(d, d)}")
            v.setflags(write=False)
            jumps.append(v)
        h.setflags(write=False)
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "jumps", tuple(jumps))

    @property
    def dim(self):
        return self.hamiltonian.shape[0]

    def fingerprint(self):
        """Stable hash of the numerical content."""
        h = hashlib.sha256()
        h.update(str(self.dim).encode())
        h.update(np.ascontiguousarray(self.hamiltonian).tobytes())
        for v in self.jumps:
            h.update(np.ascontiguousarray(v).tobytes())
        return h.hexdigest()


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Matrix of a linear map on d x d matrices acting on column-stacked vectors."""

    dim: int
    matrix: np.ndarray
    fingerprint: str = ""
    convention: str = VECTORIZATION

    def __call__(self, x):
        return unvec(self.matrix @ vec(x), self.dim)

    @property
    def adjoint(self):
        """HS adjoint (the Heisenberg-picture generator)."""
        return Superoperator(self.dim, dagger(self.matrix), self.fingerprint, self.convention)


def _dissipation_sums(model):
    d = model.dim
    vdv = np.zeros((d, d), dtype=complex)
    vvd = np.zeros((d, d), dtype=complex)
    for v in model.jumps:
        vdv += dagger(v) @ v
        vvd += v @ dagger(v)
    return vdv, vvd


def apply_generator(model, x):
    """Apply the Lindblad generator to ``x`` directly."""
    x = as_square(x, "X")
    if x.shape != (model.dim, model.dim):
        raise DimensionMismatch(f"X has shape {x.shape}, model dimension is {model.dim}")
    h = model.hamiltonian
    out = -1j * (h @ x - x @ h)
    g = np.zeros_like(out)
    for v in model.jumps:
        out += v @ x @ dagger(v)
        g += dagger(v) @ v
    out -= 0.5 * (g @ x + x @ g)
    return out


def build_generator_superop(model):
    """Column-stacking matrix of the Lindblad generator."""
    d = model.dim
    eye = np.eye(d)
    h = model.hamiltonian
    vdv, _ = _dissipation_sums(model)
    lhat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for v in model.jumps:
        lhat += np.kron(v.conj(), v)
    lhat -= 0.5 * (np.kron(eye, vdv) + np.kron(vdv.T, eye))
    return Superoperator(d, lhat, model.fingerprint())


@dataclass(frozen=True)
class GateResult:
    flag: bool
    deficit: float

    def __bool__(self):
        return self.flag

    def require(self):
        if not self.flag:
            raise NotEnvironmentInduced(self.deficit)
        return self


def check_environment_induced(model, eps_psd=EPS_PSD):
    """Decide operator-norm contractivity from ``sum V V^* <= sum V^* V``.

    Returns a ``GateResult`` whose ``deficit`` is the largest violation
    ``max(0, -lambda_min(sum V^*V - sum VV^*))``.
    """
    vdv, vvd = _dissipation_sums(model)
    gap = vdv - vvd
    lam_min = float(np.linalg.eigvalsh((gap + dagger(gap)) / 2)[0]) if model.jumps else 0.0
    deficit = max(0.0, -lam_min)
    return GateResult(deficit <= eps_psd, deficit)
