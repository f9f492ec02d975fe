"""Conditional expectation onto the algebra of effective observables.

On each factor block ``W^* M W = B(C^N) (x) I_r`` the projection is the
Haar average of ``(1 (x) U) B (1 (x) U^*)`` over ``U`` in ``U(r)``.  That
average is the partial trace over the second factor divided by ``r``,
tensored back with ``I_r``; the Monte-Carlo path keeps the average
literal and serves as an independent check.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotWanCase
from .operators import as_square, dagger, op_norm, partial_trace_second
from .sampling import haar_unitaries, random_observable

CONSERVATIVE_TOL = 1e-8


def _check(structure_dim, a):
    a = as_square(a, "A")
    if a.shape[0] != structure_dim:
        raise DimensionMismatch(f"operator has dimension {a.shape[0]}, expected {structure_dim}")
    return a


def block_projection(block, a):
    """Closed-form projection of ``a`` onto one factor block."""
    w = block.isometry
    a = _check(w.shape[0], a)
    n, r = block.multiplicity, block.minimal_dim
    reduced = partial_trace_second(dagger(w) @ a @ w, n, r) / r
    return w @ np.kron(reduced, np.eye(r)) @ dagger(w)


def haar_mc_projection(block, a, samples, seed=0):
    """Monte-Carlo estimate of the block twirl with ``samples`` Haar unitaries."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    w = block.isometry
    a = _check(w.shape[0], a)
    n, r = block.multiplicity, block.minimal_dim
    rng = np.random.default_rng(seed)
    u = haar_unitaries(rng, r, size=samples)
    b = (dagger(w) @ a @ w).reshape(n, r, n, r)
    avg = np.einsum("sik,akbl,sjl->aibj", u, b, u.conj(), optimize=True) / samples
    return w @ avg.reshape(n * r, n * r) @ dagger(w)


def full_projection(structure, a):
    """Sum of the block projections."""
    a = _check(structure.dim, a)
    out = np.zeros_like(a)
    for block in structure.blocks:
        out += block_projection(block, a)
    return out


def wan_projection(structure, a):
    """Pinching ``sum_n E_n A E_n``, valid when every block has ``r = 1``."""
    a = _check(structure.dim, a)
    if any(b.minimal_dim != 1 for b in structure.blocks):
        raise NotWanCase("pinching form requires r = 1 for every block")
    return sum(b.unit_projector @ a @ b.unit_projector for b in structure.blocks)


def coarse_grain_projection(structure, a):
    """``sum tr(E A) E / dim E`` over the blocks with multiplicity one."""
    a = _check(structure.dim, a)
    out = np.zeros_like(a)
    for b in structure.blocks:
        if b.multiplicity == 1:
            e = b.unit_projector
            out += np.trace(e @ a) * e / b.rank
    return out


def check_conservative(structure, tol=CONSERVATIVE_TOL):
    """``(flag, defect)`` with ``defect = ||sum E_kn - I||``."""
    defect = op_norm(structure.unit - np.eye(structure.dim))
    return defect <= tol, defect


@dataclass(frozen=True)
class ConditionalExpectation:
    structure: object
    mode: str = "closed"
    mc_samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("closed", "mc"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def __call__(self, a):
        if self.mode == "closed":
            return full_projection(self.structure, a)
        a = _check(self.structure.dim, a)
        out = np.zeros_like(a)
        for i, block in enumerate(self.structure.blocks):
            out += haar_mc_projection(block, a, self.mc_samples, seed=[self.seed, i])
        return out


def mc_deviation(structure, samples, seed=0, observables=1):
    """Worst operator-norm gap between the Monte-Carlo and closed-form block projections.

    Uses ``observables`` random unit-norm operators drawn from ``seed``.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i, block in enumerate(structure.blocks):
        for j in range(observables):
            a = random_observable(rng, structure.dim)
            mc = haar_mc_projection(block, a, samples, seed=[seed, i, j])
            worst = max(worst, op_norm(mc - block_projection(block, a)))
    return worst
