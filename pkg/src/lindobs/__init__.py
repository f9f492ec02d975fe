"""Effective observables of environment-induced Lindblad semigroups.

Typical pipeline::

    model = LindbladModel(h, jumps)
    lhat = build_generator_superop(model)
    subspace = compute_isometric_subspace(lhat, check_environment_induced(model))
    structure = decompose_structure(extract_algebra(subspace), seed=0)
    full_projection(structure, a)
"""

from .algebra import (
    AlgebraBasis,
    AlgebraStructure,
    FactorBlock,
    decompose_structure,
    extract_algebra,
    gauge_group_summary,
    structure_from_subspace,
)
from .errors import *  # noqa: F401,F403
from .expectation import (
    ConditionalExpectation,
    block_projection,
    check_conservative,
    coarse_grain_projection,
    full_projection,
    haar_mc_projection,
    wan_projection,
)
from .isometric import (
    IsometricSubspace,
    compute_isometric_subspace,
    project_hs,
    sweeping_rate,
    verify_unitary_restriction,
)
from .lindblad import (
    GateResult,
    LindbladModel,
    Superoperator,
    apply_generator,
    build_generator_superop,
    check_environment_induced,
)
from .operators import eigh, hs_inner, matrix_exponential, partial_trace_second, trace_norm
from .semigroup import (
    EntropyTrace,
    entropy_trace,
    evolve_dual,
    evolve_state,
    linear_entropy,
    pinch,
    sweep_residual,
    von_neumann_entropy,
)

__version__ = "0.1.0"
