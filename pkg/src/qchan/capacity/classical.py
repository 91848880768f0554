"""Classical reduction: transition matrix in a fixed basis and its Shannon capacity."""

from __future__ import annotations

import numpy as np

from ..channels.kraus import KrausChannel, apply
from ..errors import NoConvergence, NotStochastic
from ..matcore import as_matrix

BA_TOL = 1e-12
BA_MAX_ITER = 100_000


def cq_matrix(chan: KrausChannel, basis=None) -> np.ndarray:
    """``g[j, k] = <b_j| Phi(|b_k><b_k|) |b_j>``; columns are input letters.

    ``basis`` holds orthonormal columns (default: the standard basis).
    """
    d = chan.dim
    b = np.eye(d, dtype=complex) if basis is None else as_matrix(basis)
    g = np.empty((d, d))
    for k in range(d):
        out = apply(chan, np.outer(b[:, k], b[:, k].conj()))
        g[:, k] = np.real(np.einsum("ij,ik,kj->j", b.conj(), out, b))
    return g


def _row_divergences(g: np.ndarray, q: np.ndarray) -> np.ndarray:
    # D(g[:, k] || q) in bits, one per input letter
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(g > 0, g * np.log2(g / q[:, None]), 0.0)
    return terms.sum(axis=0)


def classical_capacity(g, tol: float = BA_TOL, max_iter: int = BA_MAX_ITER) -> tuple[float, np.ndarray]:
    """Blahut-Arimoto capacity (bits) of the column-stochastic matrix ``g``.

    Stops when the upper bound ``max_k D(g_k || q)`` and the lower bound
    ``log2 sum_k p_k 2^{D_k}`` differ by less than ``tol``.
    Returns the capacity and the optimal input distribution.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or np.any(g < -1e-12) or np.max(np.abs(g.sum(axis=0) - 1)) > 1e-9:
        raise NotStochastic("transition matrix must be non-negative with unit column sums")
    g = np.clip(g, 0.0, None)
    n_in = g.shape[1]
    p = np.full(n_in, 1.0 / n_in)
    for _ in range(max_iter):
        q = g @ p
        dk = _row_divergences(g, q)
        upper = float(dk.max())
        z = p * np.exp2(dk)
        lower = float(np.log2(z.sum()))
        if upper - lower < tol:
            return 0.5 * (upper + lower), p
        p = z / z.sum()
    raise NoConvergence(f"Blahut-Arimoto did not converge in {max_iter} iterations")
