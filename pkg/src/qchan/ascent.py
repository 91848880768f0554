"""Fixed-point ascents over pure input states.

Both iterations replace the current pure state by the top eigenvector of the
adjoint channel applied to a spectral function of the current output:

* relative entropy ascent: ``psi <- top eigvec of Phi^[log2 Phi(psi psi^H) - log2 A]``,
  which never decreases ``H[Phi(psi psi^H), A]``;
* p-norm ascent: ``psi <- top eigvec of Phi^[Phi(psi psi^H)^(p-1)]``, which never
  decreases ``||Phi(psi psi^H)||_p`` because ``Tr X^p`` is convex.

An iteration stops when the objective moved by less than ``tol`` and the
current state is an eigenvector of its own update operator to within
``res_tol``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .channels.kraus import _SUPEROP_MAX_DIM, KrausChannel, adjoint_apply, apply
from .matcore import ZERO_EIG, eigh_desc

MAX_ITER = 2000
OBJ_TOL = 1e-13
RES_TOL = 1e-8
# exponent that stands in for p = infinity
P_INF_SURROGATE = 64.0


@dataclass
class AscentTrace:
    state: np.ndarray  # unit vector
    objective: float
    top_eigenvalue: float
    iterations: int
    converged: bool
    residual: float
    trace: list[float] = field(default_factory=list)

    @property
    def density(self) -> np.ndarray:
        return np.outer(self.state, self.state.conj())

    def is_monotone(self, slack: float = 1e-12) -> bool:
        t = np.asarray(self.trace)
        return bool(np.all(np.diff(t) >= -slack))


def _hermitian_maps(chan: KrausChannel):
    """Forward and adjoint maps for Hermitian arguments, bound once per ascent."""
    d = chan.dim
    if d > _SUPEROP_MAX_DIM:
        return partial(apply, chan), partial(adjoint_apply, chan)
    s = chan.superop
    sh = s.conj().T

    def fwd(x):
        y = (s @ x.reshape(-1)).reshape(d, d)
        return 0.5 * (y + y.conj().T)

    def back(x):
        y = (sh @ x.reshape(-1)).reshape(d, d)
        return 0.5 * (y + y.conj().T)

    return fwd, back


def _log2_spectral(w: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lw = np.log2(np.maximum(w, 1e-300))
    return (v * lw) @ v.conj().T, lw


def relent_ascent(
    chan: KrausChannel,
    log_a: np.ndarray,
    psi0: np.ndarray,
    max_iter: int = MAX_ITER,
    tol: float = OBJ_TOL,
    res_tol: float = RES_TOL,
) -> AscentTrace:
    """Maximise ``H[Phi(psi psi^H), A]`` given ``log_a = log2 A``."""
    psi = np.asarray(psi0, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    trace: list[float] = []
    prev = -np.inf
    lam = res = np.nan
    converged = False
    it = 0
    fwd, back = _hermitian_maps(chan)
    for it in range(1, max_iter + 1):
        out = fwd(np.outer(psi, psi.conj()))
        w, v = eigh_desc(out)
        log_out, lw = _log2_spectral(w, v)
        mask = w > ZERO_EIG
        obj = float(np.sum(w[mask] * lw[mask]) - np.real(np.vdot(out, log_a)))
        trace.append(obj)
        g = back(log_out - log_a)
        gw, gv = eigh_desc(g)
        lam = float(gw[0])
        res = float(np.linalg.norm(g @ psi - lam * psi))
        if abs(obj - prev) < tol and res <= res_tol:
            converged = True
            break
        prev = obj
        psi = gv[:, 0]
    return AscentTrace(psi, trace[-1], lam, it, converged, res, trace)


def pnorm_ascent(
    chan: KrausChannel,
    p: float,
    psi0: np.ndarray,
    max_iter: int = MAX_ITER,
    tol: float = OBJ_TOL,
    res_tol: float = RES_TOL,
) -> AscentTrace:
    """Maximise ``||Phi(psi psi^H)||_p``; ``p = inf`` runs with exponent 64.

    For ``p = inf`` the reported objective is the top output eigenvalue of
    the final state, while the trace follows the 64-norm that is actually
    ascended.
    """
    q = P_INF_SURROGATE if np.isinf(p) else float(p)
    psi = np.asarray(psi0, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    trace: list[float] = []
    prev = -np.inf
    lam = res = np.nan
    converged = False
    top_out = np.nan
    it = 0
    fwd, back = _hermitian_maps(chan)
    for it in range(1, max_iter + 1):
        out = fwd(np.outer(psi, psi.conj()))
        w, v = eigh_desc(out)
        w = np.clip(w, 0.0, None)
        top_out = w[0]
        scaled = (w / top_out) ** (q - 1)
        obj = float(top_out * np.sum((w / top_out) ** q) ** (1.0 / q))
        trace.append(obj)
        g = back((v * scaled) @ v.conj().T)
        gw, gv = eigh_desc(g)
        lam = float(gw[0])
        res = float(np.linalg.norm(g @ psi - lam * psi) / max(abs(lam), 1e-300))
        if abs(obj - prev) < tol and res <= res_tol:
            converged = True
            break
        prev = obj
        psi = gv[:, 0]
    final = float(top_out) if np.isinf(p) else trace[-1]
    return AscentTrace(psi, final, lam, it, converged, res, trace)
