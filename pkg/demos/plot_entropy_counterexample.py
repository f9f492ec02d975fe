"""
Entropy can drop under a dissipative semigroup
==============================================

Spontaneous decay of a two-level system does not pass the
environment-induced gate, and its entropy rises and then falls again.
"""

import numpy as np

from lindobs import models
from lindobs.lindblad import build_generator_superop, check_environment_induced
from lindobs.semigroup import entropy_trace

model = models.amplitude_decay()
print(check_environment_induced(model))

# start in the excited projector P
lhat = build_generator_superop(model)
trace = entropy_trace(lhat, np.diag([1.0, 0.0]), np.linspace(0, 3, 13))
for t, s, slin, _ in trace.rows():
    print(f"t={t:4.2f}  S={s:.4f}  S_lin={slin:.4f}")

# maximum ln 2 at t = ln 2
print("ln 2 =", np.log(2))

# a gated model, for contrast: entropy never decreases
deph = models.dephasing()
print(check_environment_induced(deph))
trace = entropy_trace(build_generator_superop(deph), np.full((2, 2), 0.5), np.linspace(0, 1, 6))
print(np.round(trace.entropy, 4))
