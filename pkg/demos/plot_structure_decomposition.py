"""
Block structure of the effective observables
============================================

The isometric subspace of a gated model is a *-algebra.  Its factors
``B(C^N) (x) I_r`` are recovered here for the canonical models and for a
model with a planted, randomly rotated structure.
"""

import numpy as np

from lindobs import models
from lindobs.algebra import gauge_group_summary, structure_from_subspace
from lindobs.isometric import compute_isometric_subspace
from lindobs.lindblad import build_generator_superop


def describe(model, seed=0):
    k = compute_isometric_subspace(build_generator_superop(model), model)
    s = structure_from_subspace(k, seed=seed)
    blocks = ", ".join(f"(k={b.k}, n={b.n}, N={b.N}, r={b.r})" for b in s.blocks)
    print(f"{model.label or 'model'} (d={model.dim}, dim K={k.size}): {blocks}  gauge {gauge_group_summary(s)}")
    return s


for model in models.canonical_models().values():
    describe(model)

# planted: one 2x2 factor of multiplicity 1, one scalar factor carrying U(3)
rng = np.random.default_rng(7)
model, u = models.planted_structure_model(rng, [(2, 1), (1, 3)])
s = describe(model)
print("block ranks", [b.rank for b in s.blocks], "sum", sum(b.rank for b in s.blocks))
