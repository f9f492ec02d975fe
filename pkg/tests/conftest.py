import numpy as np
import pytest

from lindobs import models
from lindobs.algebra import decompose_structure, extract_algebra
from lindobs.isometric import compute_isometric_subspace
from lindobs.lindblad import build_generator_superop, check_environment_induced


class Pipeline:
    """Everything computed for one gated model."""

    def __init__(self, model, seed=0):
        self.model = model
        self.lhat = build_generator_superop(model)
        self.gate = check_environment_induced(model)
        self.subspace = compute_isometric_subspace(self.lhat, self.gate)
        self.alg = extract_algebra(self.subspace)
        self.structure = decompose_structure(self.alg, seed=seed, dim_K=self.subspace.size)

    @property
    def d(self):
        return self.model.dim


def gated_suite(count=20, seed=1234):
    """Mixed suite: canonical, Hamiltonian-only, planted structures and random gated models."""
    rng = np.random.default_rng(seed)
    out = list(models.canonical_models().values())
    out.append(models.hamiltonian_only(rng, 3))
    out.append(models.dephasing(hamiltonian=0.4 * models.SIGMA_X))
    for blocks in ([(1, 1), (2, 1)], [(1, 2), (1, 1)], [(2, 2)], [(1, 1), (1, 2), (2, 1)], [(3, 1), (1, 3)]):
        out.append(models.planted_structure_model(rng, blocks)[0])
    while len(out) < count:
        out.append(models.random_gated_model(rng, int(rng.integers(2, 6))))
    return out[:count]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def canonical():
    return {name: Pipeline(m) for name, m in models.canonical_models().items()}


@pytest.fixture(scope="session")
def suite():
    return [Pipeline(m) for m in gated_suite()]


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
