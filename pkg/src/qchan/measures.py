"""Output-purity functionals: entropies, p-norms, majorization, PPT."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ascent import AscentTrace, pnorm_ascent, relent_ascent
from .starts import random_start_vector, start_rng
from .channels.kraus import KrausChannel, apply
from .errors import DimensionMismatch, LengthMismatch, NotAState, OutOfRange, SupportViolation
from .matcore import ZERO_EIG, as_matrix, eigh_desc, eigvalsh_desc, partial_transpose, shannon_bits, spectrum_p_norm

STATE_TOL = 1e-9
SUPPORT_TOL = 1e-9
PPT_TOL = 1e-11


def spectrum(rho, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues non-increasing, with values down to ``-tol`` clamped to zero."""
    w = eigvalsh_desc(as_matrix(rho))
    if w.size and w[-1] < -tol:
        raise NotAState(f"negative eigenvalue {w[-1]:.3e}")
    return np.clip(w, 0.0, None)


def _check_state(rho, tol: float = STATE_TOL) -> np.ndarray:
    r = as_matrix(rho)
    if r.shape[0] != r.shape[1]:
        raise NotAState("state must be square")
    if np.linalg.norm(r - r.conj().T) > tol:
        raise NotAState("state is not Hermitian")
    if abs(np.trace(r).real - 1) > tol:
        raise NotAState(f"trace {np.trace(r).real:.12f} is not 1")
    if eigvalsh_desc(r)[-1] < -tol:
        raise NotAState("state is not positive semidefinite")
    return r


def entropy(rho) -> float:
    """Von Neumann entropy in bits."""
    r = _check_state(rho)
    return shannon_bits(np.clip(eigvalsh_desc(r), 0.0, None))


def relative_entropy(rho, gamma) -> float:
    """``Tr rho (log2 rho - log2 gamma)`` in bits.

    Raises SupportViolation when ``gamma`` has a null direction on which
    ``rho`` carries more than 1e-9 weight, i.e. when the value is infinite.
    """
    r = _check_state(rho)
    g = _check_state(gamma)
    if r.shape != g.shape:
        raise DimensionMismatch("states have different dimensions")
    wg, vg = eigh_desc(g)
    weights = np.real(np.einsum("ij,ik,kj->j", vg.conj(), r, vg))
    null = wg <= ZERO_EIG
    if np.any(weights[null] > SUPPORT_TOL):
        raise SupportViolation("support of rho is not contained in support of gamma")
    cross = float(np.sum(weights[~null] * np.log2(wg[~null])))
    return -shannon_bits(np.clip(eigvalsh_desc(r), 0.0, None)) - cross


@dataclass
class PurityReport:
    """Best value over a multi-start ascent and the pure input reaching it."""

    optimum_value: float
    argmax_state: np.ndarray
    starts_used: int
    traces: list[AscentTrace] = field(repr=False, default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(t.converged for t in self.traces)

    @property
    def per_start_values(self) -> list[float]:
        return [t.objective for t in self.traces]


def _start_vectors(dim: int, starts: int, seed: int, recipes, dims):
    recipes = tuple(recipes) if recipes else ("random_pure",)
    shape = dims if dims is not None else dim
    for i in range(starts):
        rng = start_rng(seed, i)
        yield random_start_vector(recipes[i % len(recipes)], shape, rng)


def _best(traces: list[AscentTrace]) -> AscentTrace:
    # strict > keeps the earliest start on ties
    best = traces[0]
    for t in traces[1:]:
        if t.objective > best.objective:
            best = t
    return best


def max_output_p_norm(
    chan: KrausChannel,
    p: float,
    starts: int = 20,
    seed: int = 0,
    recipes=None,
    dims=None,
    extra_starts=(),
) -> PurityReport:
    """Multi-start estimate of the maximal output p-norm."""
    if not p > 1:
        raise OutOfRange("max_output_p_norm needs p > 1")
    if starts < 1:
        raise OutOfRange("starts must be >= 1")
    vecs = list(_start_vectors(chan.dim, starts, seed, recipes, dims)) + [np.asarray(v) for v in extra_starts]
    traces = [pnorm_ascent(chan, p, v) for v in vecs]
    best = _best(traces)
    return PurityReport(best.objective, best.density, len(vecs), traces)


def min_output_entropy(
    chan: KrausChannel,
    starts: int = 20,
    seed: int = 0,
    recipes=None,
    dims=None,
    extra_starts=(),
) -> PurityReport:
    """Multi-start estimate of the minimal output entropy.

    Runs the relative-entropy ascent against ``A = I/d``, whose objective is
    ``log2 d - S[Phi(psi psi^H)]``. ``optimum_value`` is the entropy itself.
    """
    if starts < 1:
        raise OutOfRange("starts must be >= 1")
    d = chan.dim
    log_a = -np.log2(d) * np.eye(d)
    vecs = list(_start_vectors(d, starts, seed, recipes, dims)) + [np.asarray(v) for v in extra_starts]
    traces = [relent_ascent(chan, log_a, v) for v in vecs]
    best = _best(traces)
    s = shannon_bits(spectrum(apply(chan, best.density)))
    return PurityReport(s, best.density, len(vecs), traces)


def majorizes(x, y, tol: float = 1e-12) -> bool:
    """True when sorted ``x`` majorizes sorted ``y`` (equal totals required)."""
    x = np.sort(np.asarray(x, dtype=float))[::-1]
    y = np.sort(np.asarray(y, dtype=float))[::-1]
    if x.shape != y.shape:
        raise LengthMismatch("spectra have different lengths")
    cx, cy = np.cumsum(x), np.cumsum(y)
    return bool(np.all(cx[:-1] >= cy[:-1] - tol) and abs(cx[-1] - cy[-1]) <= tol)


def submajorizes(x, y, tol: float = 1e-12) -> bool:
    """Partial-sum dominance without equal totals.

    Pads ``x`` with 0 and ``y`` with the missing mass, then tests ordinary
    majorization of the padded vectors on the first n partial sums.
    """
    x = np.sort(np.asarray(x, dtype=float))[::-1]
    y = np.sort(np.asarray(y, dtype=float))[::-1]
    if x.shape != y.shape:
        raise LengthMismatch("spectra have different lengths")
    gap = x.sum() - y.sum()
    if gap < -tol:
        return False
    xp = np.append(x, 0.0)
    yp = np.append(y, max(gap, 0.0))
    cx, cy = np.cumsum(xp), np.cumsum(yp)
    return bool(np.all(cx[:-1] >= cy[:-1] - tol) and abs(cx[-1] - cy[-1]) <= tol)


def depol_spectrum(d: int, a: float) -> np.ndarray:
    """Output spectrum of the depolarizing channel on any pure input."""
    w = np.full(d, (1 - a) / d)
    w[0] += a
    return w


def depol_reference(d: int, a: float, p: float | str = "entropy") -> float:
    """Closed-form ``nu_p`` (or ``S_min`` with ``p="entropy"``) of the depolarizing channel."""
    if d < 2 or not (-1.0 / (d * d - 1) - 1e-12 <= a <= 1 + 1e-12):
        raise OutOfRange(f"a={a} outside the CPT interval for d={d}")
    w = np.sort(np.clip(depol_spectrum(d, a), 0.0, None))[::-1]
    if p == "entropy":
        return shannon_bits(w)
    return spectrum_p_norm(w, float(p))


def min_pt_eigenvalue(choi, d1: int, d2: int) -> float:
    return float(eigvalsh_desc(partial_transpose(choi, d1, d2))[-1])


def is_ppt(choi, d1: int, d2: int, tol: float = PPT_TOL) -> bool:
    """Positive partial transpose test on the second factor."""
    c = as_matrix(choi)
    if c.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"shape {c.shape} does not match {d1}x{d2}")
    return min_pt_eigenvalue(c, d1, d2) >= -tol
