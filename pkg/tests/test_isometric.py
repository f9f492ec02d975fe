import numpy as np
import pytest

from lindobs import models
from lindobs.errors import DimensionMismatch, ModelMismatch, NotEnvironmentInduced, NumericalRankAmbiguity
from lindobs.isometric import (
    _split_rank,
    compute_isometric_subspace,
    project_hs,
    sweeping_rate,
    verify_unitary_restriction,
)
from lindobs.lindblad import LindbladModel, build_generator_superop, check_environment_induced
from lindobs.operators import choi_matrix, hs_inner, matrix_exponential, trace_norm, vec
from lindobs.sampling import random_density_matrix, random_hermitian

from .conftest import gated_suite, random_complex


def isometric_oracle(lhat, t=1.0):
    """Vectors on which exp(tL) and exp(tL^dagger) are both isometric at a single time.

    For a contraction semigroup, norm preservation at one t > 0 forces it on
    [0, t] and, by analyticity, for all t.
    """
    n = lhat.matrix.shape[0]
    fwd = matrix_exponential(lhat.matrix, t)
    bwd = fwd.conj().T
    stack = np.vstack([np.eye(n) - bwd @ fwd, np.eye(n) - fwd @ bwd])
    _, sv, vh = np.linalg.svd(stack)
    return vh[sv <= 1e-9].conj().T


def same_span(a, b, tol=1e-8):
    if a.shape[1] != b.shape[1]:
        return False
    pa, pb = a @ a.conj().T, b @ b.conj().T
    return np.abs(pa - pb).max() <= tol


def compute(model):
    lhat = build_generator_superop(model)
    return lhat, compute_isometric_subspace(lhat, check_environment_induced(model))


def test_hamiltonian_model_keeps_everything(rng):
    lhat, k = compute(LindbladModel(random_hermitian(rng, 3)))
    assert k.size == 9


def test_dephasing_subspace():
    lhat, k = compute(models.dephasing())
    assert k.size == 2
    diag = np.array([vec(np.diag([1.0, 0.0])), vec(np.diag([0.0, 1.0]))]).T
    assert same_span(k.vectors, diag.astype(complex))
    assert same_span(k.vectors, isometric_oracle(lhat))


def test_depolarizing_subspace():
    lhat, k = compute(models.depolarizing())
    assert k.size == 1
    np.testing.assert_allclose(np.abs(k.basis[0]), np.eye(2) / np.sqrt(2), atol=1e-12)
    assert same_span(k.vectors, isometric_oracle(lhat))


def test_fixpoint_shrinks_when_hamiltonian_mixes_sectors():
    # ker(L + L^dagger) is the diagonal algebra, but sigma_x rotates it away
    lhat, k = compute(models.dephasing(hamiltonian=0.4 * models.SIGMA_X))
    assert k.iterations == (2, 1)
    assert k.size == 1
    assert same_span(k.vectors, isometric_oracle(lhat))


@pytest.mark.parametrize("model", gated_suite(), ids=lambda m: m.label)
def test_matches_single_time_oracle(model):
    lhat, k = compute(model)
    assert same_span(k.vectors, isometric_oracle(lhat))
    dims = k.iterations
    assert all(b < a for a, b in zip(dims, dims[1:]))
    assert len(dims) <= model.dim**2


@pytest.mark.parametrize("model", gated_suite(), ids=lambda m: m.label)
def test_subspace_invariants(model):
    lhat, k = compute(model)
    d = model.dim
    basis = k.basis
    gram = np.array([[hs_inner(x, y) for y in basis] for x in basis])
    np.testing.assert_allclose(gram, np.eye(k.size), atol=1e-10)
    for x in basis:
        np.testing.assert_allclose(x, x.conj().T, atol=1e-12)
    for x in basis:
        for y in basis:
            prod = x @ y
            assert np.linalg.norm(prod - k.project(prod)) <= 1e-8
    ident = np.eye(d) / np.sqrt(d)
    assert np.linalg.norm(ident - k.project(ident)) <= 1e-8
    for check in verify_unitary_restriction(lhat, k, (0.1, 0.7, 2.0)):
        assert check.passed(1e-8), check


@pytest.mark.parametrize("model", gated_suite(12), ids=lambda m: m.label)
def test_projector_properties(model, rng):
    lhat, k = compute(model)
    d = model.dim
    for _ in range(5):
        phi = random_complex(rng, d, d)
        once = project_hs(k, phi)
        assert np.linalg.norm(project_hs(k, once) - once) <= 1e-10 * max(1, np.linalg.norm(phi))
        a = random_complex(rng, d, d)
        assert np.linalg.norm(k.project(a), 2) <= np.linalg.norm(a, 2) * (1 + 1e-8)
        assert trace_norm(k.project(phi)) <= trace_norm(phi) * (1 + 1e-8)
        rho = random_density_matrix(rng, d)
        assert np.trace(k.project(rho)).real <= 1 + 1e-10
        # HS self-adjointness
        assert hs_inner(a, k.project(phi)) == pytest.approx(hs_inner(k.project(a), phi), abs=1e-10)
    choi = choi_matrix(k.project, d)
    assert np.linalg.eigvalsh((choi + choi.conj().T) / 2)[0] >= -1e-8
    assert np.linalg.norm(k.project(np.eye(d)), 2) == pytest.approx(1.0, abs=1e-10)
    for t in (0.3, 1.5):
        x = k.project(random_complex(rng, d, d))
        et = matrix_exponential(lhat.matrix, t)
        lhs = k.project((et @ vec(x)).reshape(d, d, order="F"))
        rhs = (et @ vec(k.project(x))).reshape(d, d, order="F")
        np.testing.assert_allclose(lhs, rhs, atol=1e-8)


def test_project_examples():
    _, k = compute(models.dephasing())
    a, b, c, d = 1.0, 2 - 1j, 0.5j, -3.0
    np.testing.assert_allclose(k.project(np.array([[a, b], [c, d]])), np.diag([a, d]), atol=1e-14)
    off = np.array([[0, 1], [1j, 0]])
    assert np.abs(k.project(off)).max() < 1e-14
    x = np.diag([0.3, -1.2])
    np.testing.assert_allclose(k.project(x), x, atol=1e-14)
    with pytest.raises(DimensionMismatch):
        k.project(np.eye(3))


def test_refuses_non_gated_model():
    model = models.amplitude_decay()
    lhat = build_generator_superop(model)
    with pytest.raises(NotEnvironmentInduced):
        compute_isometric_subspace(lhat, check_environment_induced(model))
    with pytest.raises(NotEnvironmentInduced):
        compute_isometric_subspace(lhat, model)


def test_model_mismatch():
    lhat, _ = compute(models.depolarizing())
    _, k = compute(models.dephasing())
    with pytest.raises(ModelMismatch):
        verify_unitary_restriction(lhat, k)


def test_rank_ambiguity_band():
    assert list(_split_rank([1.0, 1e-14, 0.5], 1.0, 1e-9, "x")) == [1]
    with pytest.raises(NumericalRankAmbiguity) as err:
        _split_rank([1.0, 2e-9], 1.0, 1e-9, "x")
    assert err.value.band == (2e-9,)
    # a dissipator this weak sits inside the ambiguity band
    weak = LindbladModel(np.zeros((2, 2)), (1e-5 * models.SIGMA_Z, models.SIGMA_X))
    lhat = build_generator_superop(weak)
    with pytest.raises(NumericalRankAmbiguity):
        compute_isometric_subspace(lhat, check_environment_induced(weak))


def test_deterministic_basis():
    model = models.planted_structure_model(np.random.default_rng(3), [(2, 1), (1, 2)])[0]
    _, k1 = compute(model)
    _, k2 = compute(model)
    np.testing.assert_array_equal(k1.vectors, k2.vectors)


def test_sweeping_rate():
    lhat, k = compute(models.dephasing())
    assert sweeping_rate(lhat, k) == pytest.approx(4.0)
    lhat, k = compute(models.depolarizing())
    assert sweeping_rate(lhat, k) == pytest.approx(4.0)
    lhat, k = compute(LindbladModel(np.eye(2)))
    assert sweeping_rate(lhat, k) == float("inf")
