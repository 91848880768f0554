"""
Output purity of structured channels
====================================

The depolarizing channel shrinks every pure state by the same amount. The
qutrit and doubly depolarizing families mix it with unitaries, yet their most
pure output is exactly the depolarizing one, reached only on vectors that
every unitary maps to a phase.
"""

# %%
import math

import numpy as np

from qchan.channels import DoublyDepolarizing, Qutrit, apply, build, build_depolarizing, choi_matrix, family_unitaries
from qchan.channels.kraus import common_eigenvectors
from qchan.matcore import proj
from qchan.measures import depol_reference, depol_spectrum, max_output_p_norm, min_output_entropy, min_pt_eigenvalue, spectrum

rng = np.random.default_rng(0)

# %%
# Depolarizing: every pure input gives the same output spectrum.
chan = build_depolarizing(3, 0.6)
for _ in range(3):
    psi = rng.normal(size=3) + 1j * rng.normal(size=3)
    print("depolarizing output spectrum", np.round(spectrum(apply(chan, proj(psi / np.linalg.norm(psi)))), 12))
print("closed form                 ", depol_spectrum(3, 0.6))

# %%
# A qutrit channel. Multi-start ascent finds the same 2-norm and entropy as
# the depolarizing channel with the same total weight a.
spec = Qutrit((0.35, 0.15, 0.1, 0.05), theta=0.3)
chan = build(spec)
nu2 = max_output_p_norm(chan, 2.0, starts=20, seed=1)
smin = min_output_entropy(chan, starts=20, seed=1)
print(f"a = {spec.a:.2f}")
print(f"max output 2-norm  {nu2.optimum_value:.12f}  depolarizing {depol_reference(3, spec.a, 2.0):.12f}")
print(f"min output entropy {smin.optimum_value:.12f}  depolarizing {depol_reference(3, spec.a):.12f}")

# %%
# The optimum sits on the one vector every unitary fixes up to a phase.
common = common_eigenvectors(family_unitaries(spec))
print("common eigenvectors (columns):\n", np.round(common, 6))
print("overlap of the ascent's best state with it:", abs(np.vdot(common[:, 0], nu2.argmax_state @ common[:, 0])))

# %%
# Tilting away from that vector strictly lowers purity.
away = np.array([0, 1, 1j]) / math.sqrt(2)
for angle in (0.0, 0.1, 0.5, math.pi / 2):
    psi = math.cos(angle) * common[:, 0] + math.sin(angle) * away
    out = spectrum(apply(chan, proj(psi)))
    print(f"tilt {angle:.2f} rad: top eigenvalue {out[0]:.6f}")

# %%
# Doubly depolarizing channels have a whole block of common eigenvectors.
dd = DoublyDepolarizing(4, 2, 0.7, 0.4)
print("doubly depolarizing common eigenvectors:\n", np.round(common_eigenvectors(family_unitaries(dd)), 6))

# %%
# The depolarizing Choi matrix stays PPT up to a = 1/(d+1).
for d in (2, 3):
    for a in (1 / (d + 1) - 0.05, 1 / (d + 1), 1 / (d + 1) + 0.05):
        lam = min_pt_eigenvalue(choi_matrix(build_depolarizing(d, a)), d, d)
        print(f"d={d} a={a:.4f} min eigenvalue of partial transpose {lam:+.3e}")
