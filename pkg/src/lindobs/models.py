"""Reference models and random model generators.

The named models are the ones whose structure can be worked out by hand:

* ``amplitude_decay`` -- single lowering jump, fails the gate;
* ``dephasing`` -- commuting blocks, two one-dimensional sectors;
* ``depolarizing`` -- Pauli jumps, only scalars survive;
* ``qubit_with_depolarized_qubit`` -- effective observables ``B(C^2) (x) I_2``.
"""

import numpy as np
from scipy.linalg import block_diag

from .lindblad import LindbladModel, check_environment_induced
from .sampling import ginibre, haar_unitaries, random_hermitian

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def amplitude_decay():
    """``H = 0`` and the single jump ``[[0, 0], [1, 0]]``; ``T_t P = e^-t P + (1 - e^-t) P_perp``."""
    a = np.array([[0, 0], [1, 0]], dtype=complex)
    return LindbladModel(np.zeros((2, 2)), (a,), label="amplitude-decay")


def amplitude_damping():
    """Jump ``[[0, 1], [0, 0]]``, the mirror image of :func:`amplitude_decay`."""
    a = np.array([[0, 1], [0, 0]], dtype=complex)
    return LindbladModel(np.zeros((2, 2)), (a,), label="amplitude-damping")


def dephasing(rate=4.0, hamiltonian=None):
    """Qubit dephasing whose coherences decay as ``exp(-rate * t)``.

    The jump is ``sqrt(rate / 2) * sigma_z``; with the default rate 4 this is
    ``sqrt(2) * sigma_z``.
    """
    h = np.zeros((2, 2)) if hamiltonian is None else hamiltonian
    return LindbladModel(h, (np.sqrt(rate / 2) * SIGMA_Z,), label="dephasing")


def depolarizing(rate=1.0):
    return LindbladModel(np.zeros((2, 2)), tuple(np.sqrt(rate) * p for p in PAULIS), label="depolarizing")


def qubit_with_depolarized_qubit(h1=None):
    """System qubit (first factor) next to a fully depolarized qubit (second factor)."""
    h1 = 0.7 * SIGMA_X + 0.3 * SIGMA_Z if h1 is None else h1
    eye = np.eye(2)
    jumps = tuple(np.kron(eye, p) for p in PAULIS)
    return LindbladModel(np.kron(h1, eye), jumps, label="qubit-with-depolarized-qubit")


def hamiltonian_only(rng, d):
    return LindbladModel(random_hermitian(rng, d), (), label="hamiltonian")


def canonical_models():
    """The gated reference models keyed by name."""
    return {
        "dephasing": dephasing(),
        "depolarizing": depolarizing(),
        "qubit_with_depolarized_qubit": qubit_with_depolarized_qubit(),
    }


def random_gated_model(rng, d, kind=None):
    """Random model passing the environment-induced gate.

    ``kind`` selects the jump family: ``"hermitian"``, ``"unitary"`` (scaled
    random unitaries), ``"pair"`` (``A`` together with ``A^*``, non-normal) or
    ``"mixed"``.  Every result is verified against the gate.
    """
    kinds = ("hermitian", "unitary", "pair", "mixed")
    kind = kinds[rng.integers(len(kinds))] if kind is None else kind
    h = random_hermitian(rng, d, scale=rng.uniform(0.1, 2.0))
    jumps = []
    if kind in ("hermitian", "mixed"):
        jumps += [random_hermitian(rng, d, scale=rng.uniform(0.2, 1.0)) for _ in range(rng.integers(1, 4))]
    if kind in ("unitary", "mixed"):
        jumps += [rng.uniform(0.2, 1.0) * haar_unitaries(rng, d) for _ in range(rng.integers(1, 3))]
    if kind in ("pair", "mixed"):
        for _ in range(rng.integers(1, 3)):
            a = 0.5 * ginibre(rng, d)
            jumps += [a, a.conj().T]
    model = LindbladModel(h, tuple(jumps), label=f"random-{kind}")
    if not check_environment_induced(model).flag:
        raise AssertionError("generated model failed the gate")
    return model


def planted_structure_model(rng, blocks, n_jumps=2, rotate=True):
    """Gated model whose effective observables are ``U (+)_b [B(C^N_b) (x) I_r_b] U^*``.

    ``blocks`` is a sequence of ``(N, r)`` pairs.  Jumps are random Hermitian
    elements of the commutant, so their commutant is exactly the planted
    algebra; the Hamiltonian has components in both the algebra and its
    commutant.  Returns the model and the unitary ``U``.
    """
    d = sum(n * r for n, r in blocks)

    def assemble(part):
        return block_diag(*[part(n, r) for n, r in blocks])

    jumps = [
        assemble(lambda n, r: np.kron(np.eye(n), random_hermitian(rng, r)) + rng.normal() * np.eye(n * r))
        for _ in range(n_jumps)
    ]
    h = assemble(lambda n, r: np.kron(random_hermitian(rng, n), np.eye(r)))
    h = h + 0.3 * assemble(lambda n, r: np.kron(np.eye(n), random_hermitian(rng, r)))
    u = haar_unitaries(rng, d) if rotate else np.eye(d, dtype=complex)
    conj = lambda x: u @ x @ u.conj().T  # noqa: E731
    label = "planted-" + "+".join(f"{n}x{r}" for n, r in blocks)
    return LindbladModel(conj(h), tuple(conj(v) for v in jumps), label=label), u
