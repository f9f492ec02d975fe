import numpy as np
import pytest

from lindobs import models
from lindobs.errors import DimensionMismatch, NonHermitianInput, NotEnvironmentInduced
from lindobs.lindblad import (
    LindbladModel,
    apply_generator,
    build_generator_superop,
    check_environment_induced,
)
from lindobs.operators import matrix_exponential, superop_choi, unvec, vec
from lindobs.sampling import haar_unitaries, random_hermitian

from .conftest import random_complex

P = np.diag([1.0, 0.0]).astype(complex)
P_PERP = np.eye(2) - P


def test_model_validation():
    with pytest.raises(NonHermitianInput):
        LindbladModel([[0, 1], [0, 0]])
    with pytest.raises(DimensionMismatch):
        LindbladModel(np.eye(2), (np.eye(3),))
    m = LindbladModel(np.eye(2))
    assert m.jumps == () and m.dim == 2
    with pytest.raises(ValueError):
        m.hamiltonian[0, 0] = 5


def test_generator_on_projector_example():
    out = apply_generator(models.amplitude_decay(), P)
    np.testing.assert_allclose(out, P_PERP - P, atol=1e-15)


def test_generator_zero_cases(rng):
    h = np.diag([1.0, 2.0, 3.0])
    x = np.diag(random_complex(rng, 3))
    assert np.abs(apply_generator(LindbladModel(h), x)).max() < 1e-14
    deph = LindbladModel(np.zeros((2, 2)), (models.SIGMA_Z,))
    assert np.abs(apply_generator(deph, np.eye(2) / 2)).max() == 0
    with pytest.raises(DimensionMismatch):
        apply_generator(deph, np.eye(3))


def test_superop_null_generator():
    lhat = build_generator_superop(LindbladModel(np.zeros((3, 3))))
    assert lhat.matrix.shape == (9, 9)
    assert not lhat.matrix.any()


def test_superop_projector_example():
    lhat = build_generator_superop(models.amplitude_decay())
    assert lhat.matrix.shape == (4, 4)
    np.testing.assert_allclose(lhat.matrix @ vec(P), vec(P_PERP - P), atol=1e-15)


def test_superop_matches_direct_application(rng):
    for _ in range(5):
        d = int(rng.integers(2, 6))
        jumps = tuple(random_complex(rng, d, d) for _ in range(3))
        model = LindbladModel(random_hermitian(rng, d), jumps)
        lhat = build_generator_superop(model)
        for _ in range(20):
            x = random_complex(rng, d, d)
            direct = apply_generator(model, x)
            assert np.abs(unvec(lhat.matrix @ vec(x)) - direct).max() <= 1e-12 * max(1, np.abs(direct).max())


def test_trace_and_hermiticity_preservation(rng):
    for _ in range(50):
        d = int(rng.integers(2, 6))
        jumps = tuple(random_complex(rng, d, d) / 2 for _ in range(int(rng.integers(0, 4))))
        model = LindbladModel(random_hermitian(rng, d), jumps)
        lhat = build_generator_superop(model)
        x = random_complex(rng, d, d)
        y = lhat(x)
        assert abs(np.trace(y)) <= 1e-11 * max(1, np.abs(x).sum())
        np.testing.assert_allclose(y.conj().T, lhat(x.conj().T), atol=1e-11)


@pytest.mark.parametrize("t", [0.1, 1.0])
def test_semigroup_complete_positivity(rng, t):
    for _ in range(10):
        d = int(rng.integers(2, 5))
        jumps = tuple(random_complex(rng, d, d) / 2 for _ in range(2))
        lhat = build_generator_superop(LindbladModel(random_hermitian(rng, d), jumps))
        choi = superop_choi(matrix_exponential(lhat.matrix, t), d)
        assert np.linalg.eigvalsh((choi + choi.conj().T) / 2)[0] >= -1e-8


def test_gate_examples(rng):
    gate = check_environment_induced(models.amplitude_decay())
    assert not gate.flag and gate.deficit == pytest.approx(1.0)
    gate = check_environment_induced(models.amplitude_damping())
    assert not gate.flag and gate.deficit == pytest.approx(1.0)
    with pytest.raises(NotEnvironmentInduced):
        gate.require()
    h = random_hermitian(rng, 3)
    for jumps in ([random_hermitian(rng, 3), random_hermitian(rng, 3)], [haar_unitaries(rng, 3)]):
        gate = check_environment_induced(LindbladModel(h, tuple(jumps)))
        assert gate.flag and gate.deficit <= 1e-14
    gate = check_environment_induced(LindbladModel(h))
    assert gate.flag and gate.deficit == 0.0


def test_gate_accepts_non_normal_pairs(rng):
    a = random_complex(rng, 3, 3)
    model = LindbladModel(np.zeros((3, 3)), (a, a.conj().T))
    assert check_environment_induced(model).flag
    assert not check_environment_induced(LindbladModel(np.zeros((3, 3)), (a,))).flag


def test_gated_models_contract_operator_norm(rng):
    for _ in range(10):
        model = models.random_gated_model(rng, int(rng.integers(2, 5)))
        lhat = build_generator_superop(model)
        dual = lhat.adjoint.matrix
        for t in rng.uniform(0, 5, size=3):
            a = random_complex(rng, model.dim, model.dim)
            out = unvec(matrix_exponential(dual, t) @ vec(a))
            assert np.linalg.norm(out, 2) <= np.linalg.norm(a, 2) * (1 + 1e-8)
            # Schroedinger picture on operators as well
            out = unvec(matrix_exponential(lhat.matrix, t) @ vec(a))
            assert np.linalg.norm(out, 2) <= np.linalg.norm(a, 2) * (1 + 1e-8)


def test_fingerprint_is_content_based(rng):
    h = random_hermitian(rng, 2)
    assert LindbladModel(h).fingerprint() == LindbladModel(h.copy()).fingerprint()
    assert LindbladModel(h).fingerprint() != LindbladModel(2 * h).fingerprint()
