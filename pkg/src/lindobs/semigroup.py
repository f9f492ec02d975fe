"""Time evolution, entropy diagnostics, pinching and the sweeping residual."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidProjectorFamily, InvalidState, ModelMismatch, NegativeTime
from .operators import (
    EPS_HERM,
    as_square,
    check_density_matrix,
    dagger,
    matrix_exponential,
    trace_norm,
    unvec,
    vec,
)

# Evolved states may carry roundoff negativity down to this level.
CLAMP_TOL = 1e-8


def _check_time(t):
    t = float(t)
    if not np.isfinite(t) or t < 0:
        raise NegativeTime(f"time must be finite and >= 0, got {t}")
    return t


def _propagate(matrix, x, t, d):
    if t == 0:
        return np.array(x, dtype=complex)
    return unvec(matrix_exponential(matrix, t) @ vec(x), d)


def evolve_state(lhat, rho, t):
    """Return ``T_t rho = unvec(exp(t L) vec rho)``."""
    t = _check_time(t)
    rho = check_density_matrix(rho)
    if rho.shape[0] != lhat.dim:
        raise InvalidState(f"state has dimension {rho.shape[0]}, generator acts on {lhat.dim}")
    out = _propagate(lhat.matrix, rho, t, lhat.dim)
    out = (out + dagger(out)) / 2
    return check_density_matrix(out, tol_herm=1e-9, tol_psd=CLAMP_TOL)


def evolve_dual(lhat, a, t):
    """Heisenberg-picture evolution ``T_t^*(A)`` generated by the adjoint of ``lhat``."""
    t = _check_time(t)
    a = as_square(a, "A")
    return _propagate(dagger(lhat.matrix), a, t, lhat.dim)


def _spectrum(rho):
    rho = check_density_matrix(rho, tol_herm=1e-9, tol_psd=CLAMP_TOL)
    lam = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    return np.clip(lam, 0.0, 1.0)


def von_neumann_entropy(rho):
    """``-tr rho log rho`` in nats."""
    lam = _spectrum(rho)
    d = len(lam)
    lam = lam[lam > 0]
    s = float(-np.sum(lam * np.log(lam)))
    # max(0.0, -0.0) keeps the positive zero
    return min(max(0.0, s), float(np.log(d)))


def linear_entropy(rho):
    """``tr(rho - rho^2) = 1 - sum lambda_i^2``."""
    lam = _spectrum(rho)
    return max(0.0, 1.0 - float(np.sum(lam**2)))


def pinch(rho, projectors, tol=EPS_HERM):
    """Apply the measurement map ``rho -> sum_j Q_j rho Q_j``."""
    rho = check_density_matrix(rho)
    qs = [as_square(q, "projector") for q in projectors]
    d = rho.shape[0]
    if not qs:
        raise InvalidProjectorFamily("empty projector family")
    for j, q in enumerate(qs):
        if q.shape != (d, d):
            raise InvalidProjectorFamily(f"projector {j} has shape {q.shape}")
    total = np.zeros((d, d), dtype=complex)
    for j, qj in enumerate(qs):
        total += qj
        for k, qk in enumerate(qs):
            target = qj if j == k else 0
            if np.abs(qj @ qk - target).max() > tol * 10:
                raise InvalidProjectorFamily(f"projectors {j} and {k} violate Q_j Q_k = delta_jk Q_j")
    if np.abs(total - np.eye(d)).max() > tol * 10:
        raise InvalidProjectorFamily("projectors do not sum to the identity")
    return sum(q @ rho @ q for q in qs)


def sweep_residual(lhat, subspace, rho, t):
    """Trace norm of the part of ``T_t rho`` outside the isometric subspace."""
    if subspace.model_fingerprint != lhat.fingerprint:
        raise ModelMismatch("isometric subspace was computed for a different model")
    state = evolve_state(lhat, rho, t)
    return trace_norm(state - subspace.project(state))


@dataclass(frozen=True)
class EntropyTrace:
    """Diagnostics sampled along one trajectory; ``sweep_residual`` is ``None`` when unavailable."""

    times: tuple
    entropy: tuple
    linear_entropy: tuple
    sweep_residual: tuple = None

    def rows(self):
        res = self.sweep_residual or (None,) * len(self.times)
        return list(zip(self.times, self.entropy, self.linear_entropy, res))


def entropy_trace(lhat, rho, times, subspace=None):
    """Evaluate entropy, linear entropy and (optionally) the sweeping residual on a time grid."""
    times = tuple(float(t) for t in times)
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("times must be ascending")
    if subspace is not None and subspace.model_fingerprint != lhat.fingerprint:
        raise ModelMismatch("isometric subspace was computed for a different model")
    s, slin, res = [], [], []
    for t in times:
        state = evolve_state(lhat, rho, t)
        s.append(von_neumann_entropy(state))
        slin.append(linear_entropy(state))
        if subspace is not None:
            res.append(trace_norm(state - subspace.project(state)))
    return EntropyTrace(times, tuple(s), tuple(slin), tuple(res) if subspace is not None else None)
