"""
Conditional expectation by partial trace and by Haar twirling
=============================================================

On each block the projection onto the effective observables averages over
the gauge group ``U(r)``.  The closed form takes a partial trace.  A Monte
Carlo average over Haar unitaries converges to it at rate ``1/sqrt(n)``.
"""

import numpy as np

from lindobs import models
from lindobs.algebra import structure_from_subspace
from lindobs.expectation import ConditionalExpectation, full_projection
from lindobs.isometric import compute_isometric_subspace
from lindobs.lindblad import build_generator_superop
from lindobs.operators import op_norm
from lindobs.sampling import random_observable

model = models.qubit_with_depolarized_qubit()
k = compute_isometric_subspace(build_generator_superop(model), model)
structure = structure_from_subspace(k)

# B (x) C is mapped to B (x) I tr(C) / 2
b = np.array([[1, 2j], [-2j, 0]])
c = np.diag([3.0, 1.0])
print(np.round(full_projection(structure, np.kron(b, c)).real, 6))

a = random_observable(np.random.default_rng(1), 4)
exact = full_projection(structure, a)
for n in (100, 1000, 10000):
    mc = ConditionalExpectation(structure, "mc", mc_samples=n, seed=3)(a)
    print(f"n={n:6d}  deviation {op_norm(mc - exact):.4f}   sqrt(n) * deviation {np.sqrt(n) * op_norm(mc - exact):.3f}")

# same map as the orthogonal projector onto K
print("HS gap", np.linalg.norm(exact - k.project(a)))
