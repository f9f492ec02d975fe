"""
The isometric subspace
======================

For a gated generator the semigroup splits into a part on which it acts
unitarily and a part that decays.  Here the split is computed for a
dephased qubit driven by a transverse field and for two coupled qubits.
"""

import numpy as np

from lindobs import models
from lindobs.isometric import compute_isometric_subspace, sweeping_rate, verify_unitary_restriction
from lindobs.lindblad import build_generator_superop, check_environment_induced
from lindobs.semigroup import sweep_residual

for model in (models.dephasing(), models.qubit_with_depolarized_qubit()):
    lhat = build_generator_superop(model)
    k = compute_isometric_subspace(lhat, check_environment_induced(model))
    print(f"{model.label}: dim K = {k.size} of {k.dim_hs}, fixpoint sizes {k.iterations}")
    for check in verify_unitary_restriction(lhat, k):
        print(f"  t={check.t}: drift {check.norm_drift:.1e}, leak {check.invariance_defect:.1e}")
    g = sweeping_rate(lhat, k)
    rho = np.eye(model.dim) / model.dim
    rho[0, -1] = rho[-1, 0] = 0.5 / model.dim
    print(f"  slowest decay rate {g:.3f}, residual at 20/g {sweep_residual(lhat, k, rho, 20 / g):.1e}")

# K is the span of the diagonal matrices for pure dephasing
k = compute_isometric_subspace(build_generator_superop(models.dephasing()), models.dephasing())
print(np.round(np.array(k.basis).real, 6))
