"""Kraus-operator channels and the generic operations on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from ..errors import DimensionMismatch, NotUnitary
from ..matcore import as_matrix, dag, eigh_desc, is_unitary

COMPLETENESS_TOL = 1e-10

# superoperator caching is only worth it while d^2 x d^2 stays small
_SUPEROP_MAX_DIM = 16


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A CP map ``rho -> sum_k A_k rho A_k^H`` on ``dim x dim`` matrices.

    ``trace_preserving`` and ``unital`` are checked against the Kraus set at
    construction, to ``1e-10`` in Frobenius norm. Maps that are only
    trace non-increasing (the contraction family) pass
    ``trace_preserving=False`` and are checked for ``sum A^H A <= I``.
    """

    kraus: np.ndarray
    trace_preserving: bool = True
    unital: bool = False
    family: Any = field(default=None, repr=False)

    def __post_init__(self):
        k = np.asarray(self.kraus, dtype=complex)
        if k.ndim == 2:
            k = k[None]
        if k.ndim != 3 or k.shape[1] != k.shape[2]:
            raise DimensionMismatch(f"Kraus stack must be (K, d, d), got {k.shape}")
        if not np.all(np.isfinite(k)):
            raise ValueError("Kraus operators have non-finite entries")
        object.__setattr__(self, "kraus", k)
        d = k.shape[1]
        gram = np.einsum("kji,kjl->il", k.conj(), k)
        if self.trace_preserving:
            res = np.linalg.norm(gram - np.eye(d))
            if res > COMPLETENESS_TOL:
                raise ValueError(f"Kraus set is not trace preserving (residual {res:.2e})")
        else:
            top = eigh_desc(gram)[0][0]
            if top > 1 + COMPLETENESS_TOL:
                raise ValueError(f"Kraus set is not trace non-increasing (top {top:.6f})")
        if self.unital:
            res = np.linalg.norm(np.einsum("kij,klj->il", k, k.conj()) - np.eye(d))
            if res > COMPLETENESS_TOL:
                raise ValueError(f"Kraus set flagged unital but is not (residual {res:.2e})")

    @property
    def dim(self) -> int:
        return self.kraus.shape[1]

    @property
    def num_kraus(self) -> int:
        return self.kraus.shape[0]

    @cached_property
    def superop(self) -> np.ndarray:
        # row-major vec: vec(A X B) = (A kron B^T) vec(X)
        k = self.kraus
        d = self.dim
        s = np.tensordot(k, k.conj(), axes=([0], [0]))  # (a, b, c, e)
        return s.transpose(0, 2, 1, 3).reshape(d * d, d * d)

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def completeness_residual(self) -> float:
        gram = np.einsum("kji,kjl->il", self.kraus.conj(), self.kraus)
        return float(np.linalg.norm(gram - np.eye(self.dim)))

    def unitality_residual(self) -> float:
        out = np.einsum("kij,klj->il", self.kraus, self.kraus.conj())
        return float(np.linalg.norm(out - np.eye(self.dim)))


def _check_input(chan: KrausChannel, x) -> np.ndarray:
    a = as_matrix(x)
    if a.shape != (chan.dim, chan.dim):
        raise DimensionMismatch(f"input shape {a.shape} does not match channel dimension {chan.dim}")
    return a


def _hermitian_like(out, inp):
    # Hermitian inputs give Hermitian outputs; drop the rounding skew only then
    skew = np.abs(inp - inp.conj().T).max()
    if skew <= 1e-12 * max(1.0, np.abs(inp).max()):
        return 0.5 * (out + out.conj().T)
    return out


def apply(chan: KrausChannel, rho) -> np.ndarray:
    """``sum_k A_k rho A_k^H``; Hermitian inputs give exactly Hermitian outputs."""
    r = _check_input(chan, rho)
    d = chan.dim
    if d <= _SUPEROP_MAX_DIM:
        out = (chan.superop @ r.reshape(-1)).reshape(d, d)
    else:
        k = chan.kraus
        out = np.einsum("kij,jl,kml->im", k, r, k.conj())
    return _hermitian_like(out, r)


def adjoint_apply(chan: KrausChannel, x) -> np.ndarray:
    """Hilbert-Schmidt adjoint ``sum_k A_k^H X A_k``."""
    a = _check_input(chan, x)
    d = chan.dim
    if d <= _SUPEROP_MAX_DIM:
        out = (chan.superop.conj().T @ a.reshape(-1)).reshape(d, d)
    else:
        k = chan.kraus
        out = np.einsum("kji,jl,klm->im", k.conj(), a, k)
    return _hermitian_like(out, a)


def tensor(phi: KrausChannel, omega: KrausChannel) -> KrausChannel:
    """Product channel with Kraus set ``{A_i kron B_j}``."""
    ka, kb = phi.kraus, omega.kraus
    na, da = ka.shape[0], phi.dim
    nb, db = kb.shape[0], omega.dim
    k = np.einsum("iab,jcd->ijacbd", ka, kb).reshape(na * nb, da * db, da * db)
    return KrausChannel(
        k,
        trace_preserving=phi.trace_preserving and omega.trace_preserving,
        unital=phi.unital and omega.unital,
        family=("tensor", phi.family, omega.family),
    )


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(np.eye(d, dtype=complex)[None], unital=True)


def choi_matrix(chan: KrausChannel) -> np.ndarray:
    """``(I kron Phi)(|beta><beta|)`` with ``|beta> = d^{-1/2} sum_i |ii>``."""
    d = chan.dim
    k = chan.kraus
    # (I kron A)|beta> has coefficient matrix A^T / sqrt(d) in the |i>|j> layout
    vecs = np.transpose(k, (0, 2, 1)).reshape(k.shape[0], d * d) / np.sqrt(d)
    c = vecs.T @ vecs.conj()
    return 0.5 * (c + c.conj().T)


def check_covariance(
    chan: KrausChannel,
    group_in: Sequence[np.ndarray],
    group_out: Sequence[np.ndarray],
    n_states: int = 10,
    seed: int = 0,
) -> float:
    """Largest ``||Phi(U rho U^H) - U' Phi(rho) U'^H||_F`` over the group and random states."""
    if len(group_in) != len(group_out):
        raise DimensionMismatch("group_in and group_out must have the same length")
    from ..starts import random_pure_state

    rng = np.random.default_rng(seed)
    states = [random_pure_state(chan.dim, rng) for _ in range(n_states)]
    worst = 0.0
    for u, up in zip(group_in, group_out):
        u = _check_input(chan, u)
        up = _check_input(chan, up)
        for rho in states:
            lhs = apply(chan, u @ rho @ u.conj().T)
            rhs = up @ apply(chan, rho) @ up.conj().T
            worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def _null_space(r: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis for vectors c with ||r c|| ~ 0."""
    g = r.conj().T @ r
    w, v = np.linalg.eigh(0.5 * (g + g.conj().T))
    return v[:, w <= tol * tol]


def _split_by_value(vals: np.ndarray, vecs: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(vals)
    groups, current = [], [order[0]]
    for i, j in zip(order[:-1], order[1:]):
        if vals[j] - vals[i] > tol:
            groups.append(current)
            current = []
        current.append(j)
    groups.append(current)
    return [vecs[:, g] for g in groups]


def _joint_eigenspaces(b: np.ndarray, tol: float) -> list[np.ndarray]:
    # a normal matrix is diagonalised jointly by its commuting Hermitian parts
    h = 0.5 * (b + b.conj().T)
    k = 0.5j * (b.conj().T - b)
    out = []
    w, v = np.linalg.eigh(h)
    for block in _split_by_value(w, v, tol):
        kb = block.conj().T @ k @ block
        w2, v2 = np.linalg.eigh(0.5 * (kb + kb.conj().T))
        for sub in _split_by_value(w2, v2, tol):
            out.append(block @ sub)
    return out


def common_eigenvectors(vs: Sequence[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """Orthonormal columns spanning every vector that all ``vs`` map to a phase.

    Candidate subspaces start as the eigenspaces of the first unitary. For
    each further unitary, a subspace is first shrunk to the part the unitary
    maps back into it (repeated until stable), then split into eigenspaces
    of the compressed operator. Returns a ``d x m`` array; ``m`` may be 0.
    """
    mats = [as_matrix(v) for v in vs]
    if not mats:
        raise ValueError("need at least one operator")
    d = mats[0].shape[0]
    for v in mats:
        if not is_unitary(v, max(tol, 1e-10)):
            raise NotUnitary("common_eigenvectors expects unitary operators")
    spaces = [np.eye(d, dtype=complex)]
    for v in mats:
        refined = []
        for q in spaces:
            while q.shape[1] > 0:
                leak = v @ q - q @ (q.conj().T @ v @ q)
                if np.linalg.norm(leak) <= tol:
                    break
                n = _null_space(leak, tol)
                q = q @ n
            if q.shape[1] == 0:
                continue
            b = q.conj().T @ v @ q
            refined.extend(q @ sub for sub in _joint_eigenspaces(b, tol))
        spaces = refined
    if not spaces:
        return np.zeros((d, 0), dtype=complex)
    return np.hstack(spaces)
