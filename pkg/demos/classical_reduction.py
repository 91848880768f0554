"""
Capacity through a classical channel
====================================

With the optimal ensemble supported on a fixed orthonormal basis, measuring in
that basis turns the quantum channel into a classical one. Blahut-Arimoto on
the resulting column-stochastic matrix gives the same capacity and weights.
"""

# %%
import numpy as np

from qchan.capacity import capacity_candidate, classical_capacity, cq_matrix
from qchan.channels import DoublyDepolarizing, Qutrit, Successive, build, qutrit_basis

np.set_printoptions(precision=6, suppress=True)

for spec, basis in (
    (Qutrit((0.45, 0.1, 0.1, 0.05)), qutrit_basis()),
    (DoublyDepolarizing(4, 2, 0.7, 0.5), None),
    (Successive(4, (0.8, 0.7, 0.6)), None),
):
    g = cq_matrix(build(spec), basis)
    c, p = classical_capacity(g)
    cand = capacity_candidate(spec)
    print(f"{spec.tag}: classical {c:.12f}, closed form {cand.c_star:.12f}")
    print("  transition matrix\n", g)
    print("  input weights", p)
