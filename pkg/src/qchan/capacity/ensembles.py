"""Input ensembles, the Holevo quantity and closed-form optimal ensembles."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ..channels.families import (
    Depolarizing,
    Diagonal,
    DoublyDepolarizing,
    Qutrit,
    Successive,
    build,
    qutrit_basis,
)
from ..channels.kraus import KrausChannel, apply
from ..errors import NotAState, OutOfRange
from ..matcore import proj, shannon_bits
from ..measures import _check_state, depol_reference, depol_spectrum, entropy


@dataclass
class Ensemble:
    weights: np.ndarray
    states: list[np.ndarray] = field(repr=False)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.states = [np.asarray(s, dtype=complex) for s in self.states]
        if len(self.weights) != len(self.states):
            raise NotAState("one weight per state required")
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1) > 1e-12:
            raise NotAState("ensemble weights must be non-negative and sum to 1")
        for s in self.states:
            _check_state(s, 1e-10)

    @property
    def average(self) -> np.ndarray:
        return sum(w * s for w, s in zip(self.weights, self.states))


def holevo_chi(chan: KrausChannel, ens: Ensemble) -> float:
    """``S[Phi(rho_av)] - sum_j pi_j S[Phi(rho_j)]`` in bits."""
    out_av = apply(chan, ens.average)
    return entropy(out_av) - float(sum(w * entropy(apply(chan, s)) for w, s in zip(ens.weights, ens.states) if w > 0))


def _r(delta_s: float, a: float) -> tuple[float, float]:
    """``r = 2^(-dS/a)`` and ``1 - r`` computed without cancellation."""
    z = -delta_s * np.log(2.0) / a
    return float(np.exp(z)), float(-np.expm1(z))


@dataclass
class QutritOptimum:
    x: float
    ensemble: Ensemble
    c_star: float
    delta_s: float
    avg_output: np.ndarray = field(repr=False)


def qutrit_output_spectra(a: float, lambda1: float) -> tuple[np.ndarray, np.ndarray]:
    """Spectra of Phi(|e0><e0|) and Phi(|e_pm><e_pm|)."""
    n = (1 - a) / 3
    s0 = depol_spectrum(3, a)
    s1 = np.array([a * (1 + lambda1) / 2 + n, a * (1 - lambda1) / 2 + n, n])
    return s0, s1


def qutrit_capacity_objective(x: float, a: float, lambda1: float) -> float:
    """Holevo quantity of {(1-2x) e0, x e+, x e-} from the output spectra."""
    s0, s1 = qutrit_output_spectra(a, lambda1)
    n = (1 - a) / 3
    avg = [a * (1 - 2 * x) + n, a * x + n, a * x + n]
    return shannon_bits(avg) - ((1 - 2 * x) * shannon_bits(s0) + 2 * x * shannon_bits(s1))


def qutrit_optimal_ensemble(spec: Qutrit) -> QutritOptimum:
    """Optimal weight x on e_pm and the resulting capacity candidate.

    Uses ``x = 1/3 - (1 - r) / (3a(1 + 2r))`` with ``r = 2^(-dS/a)``, an exact
    rearrangement of ``[(1+2a) r - (1-a)] / [3a(1 + 2r)]``.
    """
    a, lam = spec.a, spec.lambda1
    s0, s1 = qutrit_output_spectra(a, lam)
    ds = shannon_bits(s1) - shannon_bits(s0)
    if ds < -1e-12:
        raise OutOfRange("e_pm outputs are purer than e_0; weights are not in canonical order")
    r, one_minus_r = _r(max(ds, 0.0), a)
    x = 1.0 / 3.0 - one_minus_r / (3 * a * (1 + 2 * r))
    if not (0 <= x <= 1 / 3):
        raise OutOfRange(f"optimal x={x} left [0, 1/3]")
    b = qutrit_basis()
    ens = Ensemble([1 - 2 * x, x, x], [proj(b[:, 0]), proj(b[:, 1]), proj(b[:, 2])])
    n = (1 - a) / 3
    avg_out = b @ np.diag([a * (1 - 2 * x) + n, a * x + n, a * x + n]) @ b.conj().T
    return QutritOptimum(x, ens, qutrit_capacity_objective(x, a, lam), ds, avg_out)


@dataclass
class DoublyDepolOptimum:
    t: float
    t_perp: float
    ensemble: Ensemble
    c_star: float
    delta_s: float
    avg_output: np.ndarray = field(repr=False)


def dd_output_spectra(d: int, m: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Spectra of Phi(|e_1><e_1|) and Phi(|e_d><e_d|)."""
    n = (1 - a) / d
    s1 = depol_spectrum(d, a)
    k = d - m
    sd = np.full(d, n)
    sd[:k] += a * (1 - b) / k
    sd[0] += a * b
    return s1, sd


def dd_capacity_objective(t_perp: float, d: int, m: int, a: float, b: float) -> float:
    s1, sd = dd_output_spectra(d, m, a, b)
    t = (1 - (d - m) * t_perp) / m
    n = (1 - a) / d
    avg = [a * t + n] * m + [a * t_perp + n] * (d - m)
    return shannon_bits(avg) - (m * t * shannon_bits(s1) + (d - m) * t_perp * shannon_bits(sd))


def doubly_depol_optimal_ensemble(d: int, m: int, a: float, b: float) -> DoublyDepolOptimum:
    """Optimal weights (t on E_m, t_perp on its complement) and the capacity candidate.

    For d = 2m the closed form ``t_perp = 1/d - (1 - r)/(a d (1 + r))`` is
    used; otherwise the stationarity condition is solved by Brent's method on
    ``t_perp in [0, 1/d]``.
    """
    DoublyDepolarizing(d, m, a, b)  # validates the parameters
    s1, sd = dd_output_spectra(d, m, a, b)
    ds = shannon_bits(sd) - shannon_bits(s1)
    r, one_minus_r = _r(max(ds, 0.0), a)
    if d == 2 * m:
        t_perp = 1.0 / d - one_minus_r / (a * d * (1 + r))
    else:

        def stationarity(tp):
            t = (1 - (d - m) * tp) / m
            return a * np.log2((a * d * tp + 1 - a) / (a * d * t + 1 - a)) + ds

        if ds <= 0:
            t_perp = 1.0 / d
        elif stationarity(0.0) >= 0:
            t_perp = 0.0
        else:
            t_perp = brentq(stationarity, 0.0, 1.0 / d, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    t_perp = max(t_perp, 0.0)
    t = (1 - (d - m) * t_perp) / m
    states = [proj(np.eye(d)[:, j]) for j in range(d)]
    ens = Ensemble([t] * m + [t_perp] * (d - m), states)
    n = (1 - a) / d
    avg_out = np.diag([a * t + n] * m + [a * t_perp + n] * (d - m)).astype(complex)
    return DoublyDepolOptimum(t, t_perp, ens, dd_capacity_objective(t_perp, d, m, a, b), ds, avg_out)


def diagonal_family_capacity(d: int, a: float) -> float:
    """``log2 d - S_min`` of the depolarizing channel with the same total weight."""
    return float(np.log2(d) - depol_reference(d, a, "entropy"))


@dataclass
class Candidate:
    avg_output: np.ndarray = field(repr=False)
    c_star: float
    ensemble: Ensemble | None = field(default=None, repr=False)
    s_min: float = float("nan")


def capacity_candidate(spec) -> Candidate:
    """Candidate optimal average output and capacity for a family record."""
    if isinstance(spec, Qutrit):
        opt = qutrit_optimal_ensemble(spec)
        return Candidate(opt.avg_output, opt.c_star, opt.ensemble, depol_reference(3, spec.a))
    if isinstance(spec, DoublyDepolarizing):
        opt = doubly_depol_optimal_ensemble(spec.d, spec.m, spec.a, spec.b)
        return Candidate(opt.avg_output, opt.c_star, opt.ensemble, depol_reference(spec.d, spec.a))
    if isinstance(spec, (Depolarizing, Diagonal)):
        d, a = spec.d, spec.a
        ens = Ensemble(np.full(d, 1 / d), [proj(np.eye(d)[:, j]) for j in range(d)])
        return Candidate(np.eye(d, dtype=complex) / d, diagonal_family_capacity(d, a), ens, depol_reference(d, a))
    if isinstance(spec, Successive):
        from .classical import classical_capacity, cq_matrix

        chan = build(spec)
        c, p = classical_capacity(cq_matrix(chan))
        ens = Ensemble(p, [proj(np.eye(spec.d)[:, j]) for j in range(spec.d)])
        return Candidate(apply(chan, ens.average), c, ens, depol_reference(spec.d, spec.a))
    raise OutOfRange(f"no capacity candidate available for family {type(spec).__name__}")


def tensor_square_candidate(cand: Candidate) -> Candidate:
    """Product candidate for Phi (x) Phi: average output A (x) A, capacity 2C."""
    return Candidate(np.kron(cand.avg_output, cand.avg_output), 2 * cand.c_star, None, 2 * cand.s_min)


__all__ = [
    "Candidate",
    "DoublyDepolOptimum",
    "Ensemble",
    "QutritOptimum",
    "capacity_candidate",
    "dd_capacity_objective",
    "dd_output_spectra",
    "diagonal_family_capacity",
    "doubly_depol_optimal_ensemble",
    "holevo_chi",
    "qutrit_capacity_objective",
    "qutrit_optimal_ensemble",
    "qutrit_output_spectra",
    "tensor_square_candidate",
]
