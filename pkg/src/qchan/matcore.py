"""Dense complex linear algebra for small Hermitian problems.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here
is a pure function; nothing mutates its inputs.

Two eigensolvers are provided. :func:`hermitian_eigen` runs a cyclic complex
Jacobi iteration and is the reference routine. :func:`eigh_desc` wraps LAPACK
and is what the iterative optimisers call in their inner loops; the test
suite checks the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    BadExponent,
    DimensionMismatch,
    NegativeSpectrum,
    NoConvergence,
    NotHermitian,
)

# eigenvalues at or below this are treated as exact zeros in 0*log(0) terms
ZERO_EIG = 1e-15

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_OFF = 1e-14


@dataclass(frozen=True)
class HermitianEigen:
    """Eigenvalues sorted non-increasing, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _require_square(a: np.ndarray) -> int:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {a.shape}")
    return a.shape[0]


def dag(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermitian_eigen(m, tol: float = 1e-10) -> HermitianEigen:
    """Diagonalise a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``A[p, q]`` and then
    applies the usual real symmetric Jacobi rotation, so the work stays in
    the (p, q) plane. Sweeps stop once the off-diagonal Frobenius mass drops
    below ``1e-14 * ||M||_F``.

    Raises NotHermitian when ``||M - M^H||_F > tol`` and NoConvergence after
    100 sweeps.
    """
    a = as_matrix(m)
    n = _require_square(a)
    if np.linalg.norm(a - a.conj().T) > tol:
        raise NotHermitian("matrix fails the Hermitian symmetry check")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    target = JACOBI_REL_OFF * scale
    sweeps = 0
    while True:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target or n == 1:
            break
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r == 0.0 or r < 1e-300:
                    continue
                phase = z / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # (p, q) block of U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u_pp = c
                u_pq = s
                u_qp = -s * np.conj(phase)
                u_qq = c * np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u_pp + col_q * u_qp
                a[:, q] = col_p * u_pq + col_q * u_qq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
                a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * u_pp + vq * u_qp
                v[:, q] = vp * u_pq + vq * u_qq
    w = np.real(np.diag(a))
    order = np.argsort(-w, kind="stable")
    return HermitianEigen(w[order], v[:, order], sweeps)


def eigh_desc(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """LAPACK Hermitian eigendecomposition, eigenvalues non-increasing."""
    w, v = np.linalg.eigh(m)
    return w[::-1], v[:, ::-1]


def eigvalsh_desc(m: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(m)[::-1]


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*mats) -> np.ndarray:
    return reduce(kron, mats)


def partial_transpose(m, d1: int, d2: int) -> np.ndarray:
    """Transpose the second tensor factor: ((i,k),(j,l)) -> ((i,l),(j,k))."""
    a = as_matrix(m)
    if a.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"shape {a.shape} does not match {d1}x{d2} bipartition")
    t = a.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1)
    return t.reshape(d1 * d2, d1 * d2)


def matrix_fn_psd(
    m,
    f: str = "log2",
    p: float | None = None,
    eigfloor: float = 1e-300,
    tol: float = 1e-10,
) -> np.ndarray:
    """Apply ``log2`` or ``power`` to a PSD matrix through its spectrum.

    For ``log2`` eigenvalues below ``eigfloor`` are raised to it first; for
    ``power`` tiny negative eigenvalues are set to zero.
    """
    a = as_matrix(m)
    _require_square(a)
    if np.linalg.norm(a - a.conj().T) > tol:
        raise NotHermitian("matrix fails the Hermitian symmetry check")
    w, v = eigh_desc(0.5 * (a + a.conj().T))
    if w.size and w[-1] < -tol:
        raise NegativeSpectrum(f"eigenvalue {w[-1]:.3e} below -{tol}")
    if f == "log2":
        fw = np.log2(np.maximum(w, eigfloor))
    elif f == "power":
        if p is None:
            raise ValueError("power requires an exponent p")
        fw = np.power(np.clip(w, 0.0, None), p)
    else:
        raise ValueError(f"unknown spectral function {f!r}")
    return (v * fw) @ v.conj().T


def schatten_norm(m, p: float) -> float:
    """Schatten p-norm of a PSD matrix; ``p=np.inf`` gives the top eigenvalue."""
    if p < 1:
        raise BadExponent(f"Schatten exponent must be >= 1, got {p}")
    w = np.clip(eigvalsh_desc(as_matrix(m)), 0.0, None)
    return spectrum_p_norm(w, p)


def spectrum_p_norm(w: np.ndarray, p: float) -> float:
    w = np.asarray(w, dtype=float)
    if np.isinf(p):
        return float(np.max(w))
    top = np.max(w)
    if top <= 0:
        return 0.0
    # factor out the top eigenvalue so large p does not underflow
    return float(top * np.sum((w / top) ** p) ** (1.0 / p))


def shannon_bits(w) -> float:
    """-sum w log2 w with 0 log 0 = 0."""
    w = np.asarray(w, dtype=float)
    w = w[w > ZERO_EIG]
    return float(-np.sum(w * np.log2(w)))


def ket(d: int, j: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[j] = 1.0
    return v


def proj(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return u.shape[0] == u.shape[1] and np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol
