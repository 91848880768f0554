"""Relative-entropy ascent and candidate-capacity certificates.

A candidate pair (average output ``A``, capacity ``C``) is accepted when no
pure input ``omega`` found by the multi-start ascent has
``H[Phi(omega), A] > C`` beyond the verification threshold. Any start that
beats the candidate is kept as a challenger.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ..ascent import MAX_ITER, OBJ_TOL, RES_TOL, AscentTrace, relent_ascent
from ..channels.kraus import KrausChannel
from ..errors import SupportViolation
from ..matcore import as_matrix, eigh_desc
from ..starts import random_start_vector, start_rng

VERIFY_THRESHOLD = 1e-9
FULL_SUPPORT_TOL = 1e-14


@dataclass
class StationaryReport:
    state: np.ndarray
    objective: float
    top_eigenvalue: float
    iterations: int
    converged: bool
    residual: float
    trace: list[float] = field(repr=False, default_factory=list)

    @classmethod
    def from_trace(cls, t: AscentTrace) -> "StationaryReport":
        return cls(np.outer(t.state, t.state.conj()), t.objective, t.top_eigenvalue, t.iterations, t.converged, t.residual, t.trace)

    def monotone(self, slack: float = 1e-12) -> bool:
        return bool(np.all(np.diff(self.trace) >= -slack))


def log2_full_support(a) -> np.ndarray:
    m = as_matrix(a)
    w, v = eigh_desc(0.5 * (m + m.conj().T))
    if w[-1] <= FULL_SUPPORT_TOL:
        raise SupportViolation(f"reference state lacks full support (min eigenvalue {w[-1]:.3e})")
    return (v * np.log2(w)) @ v.conj().T


def _start_vector(start) -> np.ndarray:
    s = np.asarray(start, dtype=complex)
    if s.ndim == 1:
        return s
    w, v = eigh_desc(0.5 * (s + s.conj().T))
    # a mixed start is represented by its principal eigenvector
    return v[:, 0]


def capacity_ascent(
    chan: KrausChannel,
    a,
    start,
    max_iter: int = MAX_ITER,
    tol: float = OBJ_TOL,
    res_tol: float = RES_TOL,
) -> StationaryReport:
    """Ascend ``H[Phi(psi psi^H), A]`` from ``start`` (a vector or a density matrix)."""
    log_a = log2_full_support(a)
    t = relent_ascent(chan, log_a, _start_vector(start), max_iter=max_iter, tol=tol, res_tol=res_tol)
    return StationaryReport.from_trace(t)


@dataclass
class CapacityCertificate:
    candidate_avg_output: np.ndarray = field(repr=False)
    candidate_capacity: float
    verified: bool
    worst_violation: float
    best_challenger: np.ndarray | None = field(repr=False)
    starts: int
    seed: int
    best_objective: float = float("nan")
    best_state: np.ndarray | None = field(default=None, repr=False)
    iterations_max: int = 0
    all_converged: bool = True
    threshold: float = VERIFY_THRESHOLD
    reports: list[StationaryReport] = field(default_factory=list, repr=False)

    def record(self, family: str | None = None, params: dict | None = None) -> dict:
        return {
            "family": family,
            "params": params or {},
            "candidate_capacity": self.candidate_capacity,
            "worst_violation": self.worst_violation,
            "verified": self.verified,
            "seed": self.seed,
            "starts": self.starts,
            "iterations_max": self.iterations_max,
        }


def verify_candidate(
    chan: KrausChannel,
    avg_output,
    c_star: float,
    starts: int = 50,
    seed: int = 0,
    recipes=("random_pure",),
    dims=None,
    extra_starts=(),
    threshold: float = VERIFY_THRESHOLD,
    max_iter: int = MAX_ITER,
    tol: float = OBJ_TOL,
    keep_reports: bool = False,
    workers: int = 1,
) -> CapacityCertificate:
    """Check ``sup_omega H[Phi(omega), A] <= C`` over multi-start ascents.

    Start ``i`` draws from ``recipes[i % len(recipes)]`` with its own stream
    ``start_rng(seed, i)``; ``extra_starts`` are appended after them. With
    ``workers > 1`` the ascents run in a process pool; results are gathered
    in start order, so the certificate is the same for any worker count.
    """
    log_a = log2_full_support(avg_output)
    recipes = tuple(recipes)
    shape = dims if dims is not None else chan.dim
    vecs = [random_start_vector(recipes[i % len(recipes)], shape, start_rng(seed, i)) for i in range(starts)]
    vecs += [_start_vector(s) for s in extra_starts]
    run = partial(relent_ascent, chan, log_a, max_iter=max_iter, tol=tol)
    if workers > 1 and len(vecs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(run, vecs))
    else:
        traces = [run(v) for v in vecs]
    best: AscentTrace | None = None
    reports = []
    iters = 0
    converged = True
    for t in traces:
        iters = max(iters, t.iterations)
        converged &= t.converged
        if keep_reports:
            reports.append(StationaryReport.from_trace(t))
        if best is None or t.objective > best.objective:
            best = t
    worst = best.objective - c_star
    best_state = best.density
    return CapacityCertificate(
        candidate_avg_output=as_matrix(avg_output),
        candidate_capacity=float(c_star),
        verified=bool(worst <= threshold),
        worst_violation=float(worst),
        best_challenger=best_state if worst > threshold else None,
        starts=len(vecs),
        seed=seed,
        best_objective=best.objective,
        best_state=best_state,
        iterations_max=iters,
        all_converged=converged,
        threshold=threshold,
        reports=reports,
    )
