"""Parameter records for each channel family and their Kraus constructions.

Every family except the contraction one is a mixture of unitary
conjugations plus a fully depolarizing tail,

    Phi(rho) = sum_k a_k V_k rho V_k^H + (1 - a) Tr(rho) I / d,   a = sum_k a_k,

realised with Kraus operators ``sqrt(a_k) V_k`` and ``sqrt((1-a)/d) |i><j|``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import ClassVar

import numpy as np

from ..errors import BadPartition, NotUnitary, OutOfRange, WeightsInvalid
from ..matcore import is_unitary
from .kraus import KrausChannel

WEIGHT_TOL = 1e-12
UNITARY_TOL = 1e-10

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj.get("im", 0.0), dtype=float)
    return np.asarray(obj, dtype=complex)


def _floats(xs) -> tuple[float, ...]:
    return tuple(float(x) for x in xs)


@dataclass(frozen=True)
class Depolarizing:
    tag: ClassVar[str] = "depolarizing"
    d: int
    a: float

    def __post_init__(self):
        if self.d < 2:
            raise OutOfRange("depolarizing channel needs d >= 2")
        lo = -1.0 / (self.d**2 - 1)
        if not (lo - WEIGHT_TOL <= self.a <= 1 + WEIGHT_TOL):
            raise OutOfRange(f"a={self.a} outside the CPT interval [{lo:.6g}, 1]")


@dataclass(frozen=True)
class Generalized:
    tag: ClassVar[str] = "generalized"
    d: int
    weights: tuple[float, ...]
    unitaries: tuple[np.ndarray, ...] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _floats(self.weights))
        object.__setattr__(self, "unitaries", tuple(np.asarray(u, dtype=complex) for u in self.unitaries))
        if len(self.weights) != len(self.unitaries):
            raise WeightsInvalid("one weight per unitary required")
        _check_weights(self.weights)
        for u in self.unitaries:
            if u.shape != (self.d, self.d) or not is_unitary(u, UNITARY_TOL):
                raise NotUnitary("every V_k must be a d x d unitary")

    @property
    def a(self) -> float:
        return float(sum(self.weights))


@dataclass(frozen=True)
class Weyl:
    """Weyl-covariant channel ``sum_mn c_mn X^m Z^n rho (X^m Z^n)^H``."""

    tag: ClassVar[str] = "weyl"
    d: int
    c: np.ndarray = field(compare=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        object.__setattr__(self, "c", c)
        if c.shape != (self.d, self.d):
            raise WeightsInvalid("c must be d x d")
        if np.any(c < -WEIGHT_TOL) or abs(c.sum() - 1) > 1e-10:
            raise WeightsInvalid("c must be non-negative and sum to 1")


@dataclass(frozen=True)
class Diagonal:
    """Simultaneously diagonal V_k = diag(exp(i phases[k]))."""

    tag: ClassVar[str] = "diagonal"
    d: int
    weights: tuple[float, ...]
    phases: np.ndarray = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _floats(self.weights))
        ph = np.atleast_2d(np.asarray(self.phases, dtype=float))
        object.__setattr__(self, "phases", ph)
        if ph.shape != (len(self.weights), self.d):
            raise WeightsInvalid("phases must have one row of d angles per weight")
        _check_weights(self.weights)

    @property
    def a(self) -> float:
        return float(sum(self.weights))

    def unitaries(self) -> list[np.ndarray]:
        return [np.diag(np.exp(1j * row)) for row in self.phases]


@dataclass(frozen=True)
class Qutrit:
    """V_k = e^{i theta}|e0><e0| (+) sigma_k on C^3, k = 0..3.

    Weights are stored sorted non-increasing; ``order`` records which input
    position each stored weight came from.
    """

    tag: ClassVar[str] = "qutrit"
    a_k: tuple[float, float, float, float]
    theta: float = 0.0
    order: tuple[int, ...] = (0, 1, 2, 3)

    def __post_init__(self):
        w = _floats(self.a_k)
        if len(w) != 4:
            raise WeightsInvalid("qutrit family takes exactly four weights a_0..a_3")
        perm = tuple(int(i) for i in np.argsort(-np.asarray(w), kind="stable"))
        object.__setattr__(self, "a_k", tuple(w[i] for i in perm))
        object.__setattr__(self, "order", tuple(self.order[i] for i in perm))
        if any(x < 0 for x in w):
            raise WeightsInvalid("qutrit weights must be non-negative")
        a = sum(w)
        if not (0 < a < 1):
            raise WeightsInvalid(f"total weight a={a} must lie in (0, 1)")

    @property
    def d(self) -> int:
        return 3

    @property
    def a(self) -> float:
        return float(sum(self.a_k))

    @property
    def alphas(self) -> tuple[float, ...]:
        return tuple(x / self.a for x in self.a_k)

    @property
    def lambda1(self) -> float:
        al = self.alphas
        return 2 * (al[0] + al[1]) - 1

    def unitaries(self) -> list[np.ndarray]:
        out = []
        for s in PAULI:
            v = np.zeros((3, 3), dtype=complex)
            v[0, 0] = np.exp(1j * self.theta)
            v[1:, 1:] = s
            out.append(v)
        return out


@dataclass(frozen=True)
class DoublyDepolarizing:
    tag: ClassVar[str] = "doubly_depolarizing"
    d: int
    m: int
    a: float
    b: float

    def __post_init__(self):
        if not (1 <= self.m <= self.d - 2):
            raise BadPartition(f"need 1 <= m <= d-2, got d={self.d}, m={self.m}")
        if not (0 < self.a < 1):
            raise OutOfRange("a must lie in (0, 1)")
        if not (0 <= self.b <= 1):
            raise OutOfRange("b must lie in [0, 1]")

    def weights(self) -> list[float]:
        n = self.d - self.m
        rest = self.a * (1 - self.b) / n**2
        return [self.a * (self.b * n**2 + (1 - self.b)) / n**2] + [rest] * (n**2 - 1)

    def unitaries(self) -> list[np.ndarray]:
        n = self.d - self.m
        out = []
        for w in weyl_operators(n):
            v = np.zeros((self.d, self.d), dtype=complex)
            v[: self.m, : self.m] = np.eye(self.m)
            v[self.m :, self.m :] = w
            out.append(v)
        return out


@dataclass(frozen=True)
class Successive:
    tag: ClassVar[str] = "successive"
    d: int
    x: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", _floats(self.x))
        if self.d < 2 or len(self.x) != self.d - 1:
            raise OutOfRange("successive family needs d >= 2 and d-1 parameters")
        if any(not (0 < xi < 1) for xi in self.x):
            raise OutOfRange("every x_j must lie in (0, 1)")

    @property
    def a(self) -> float:
        return self.x[0]


@dataclass(frozen=True)
class Contraction:
    """CP map ``sum_k (a_k/a) V_k [a rho + (1-a) Tr(rho) I/d] V_k^H`` with contractions V_k."""

    tag: ClassVar[str] = "contraction"
    d: int
    weights: tuple[float, ...]
    operators: tuple[np.ndarray, ...] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _floats(self.weights))
        object.__setattr__(self, "operators", tuple(np.asarray(v, dtype=complex) for v in self.operators))
        if len(self.weights) != len(self.operators):
            raise WeightsInvalid("one weight per operator required")
        _check_weights(self.weights)
        for v in self.operators:
            if v.shape != (self.d, self.d):
                raise WeightsInvalid("operators must be d x d")
            top = np.linalg.eigvalsh(v @ v.conj().T)[-1]
            if top > 1 + 1e-10:
                raise WeightsInvalid("operators must be contractions (V V^H <= I)")

    @property
    def a(self) -> float:
        return float(sum(self.weights))


FAMILIES = {
    cls.tag: cls
    for cls in (Depolarizing, Generalized, Weyl, Diagonal, Qutrit, DoublyDepolarizing, Successive, Contraction)
}

FamilySpec = Depolarizing | Generalized | Weyl | Diagonal | Qutrit | DoublyDepolarizing | Successive | Contraction


def _check_weights(weights) -> None:
    if len(weights) == 0:
        raise WeightsInvalid("at least one weight required")
    if any(w < 0 for w in weights):
        raise WeightsInvalid("weights must be non-negative")
    a = sum(weights)
    if not (0 < a < 1 + WEIGHT_TOL):
        raise WeightsInvalid(f"total weight a={a} must lie in (0, 1]")


def spec_to_dict(spec) -> dict:
    """JSON-ready dict with a ``family`` tag; matrices as ``{"re", "im"}`` pairs."""
    if isinstance(spec, Qutrit):
        return {"family": spec.tag, "theta": spec.theta, "a_k": list(spec.a_k)}
    out = {"family": spec.tag}
    for k, v in asdict(spec).items():
        if isinstance(v, np.ndarray):
            out[k] = _matrix_to_json(v) if np.iscomplexobj(v) else v.tolist()
        elif isinstance(v, tuple) and v and isinstance(v[0], np.ndarray):
            out[k] = [_matrix_to_json(m) for m in v]
        elif isinstance(v, tuple):
            out[k] = list(v)
        else:
            out[k] = v
    return out


def spec_from_dict(obj: dict):
    from ..errors import ConfigInvalid

    obj = dict(obj)
    tag = obj.pop("family", None)
    if tag not in FAMILIES:
        raise ConfigInvalid(f"unknown family tag {tag!r}")
    if tag in ("generalized",):
        obj["unitaries"] = [_matrix_from_json(m) for m in obj["unitaries"]]
    if tag == "contraction":
        obj["operators"] = [_matrix_from_json(m) for m in obj["operators"]]
    for key in ("a", "b", "theta"):
        if key in obj:
            obj[key] = float(obj[key])
    for key in ("d", "m"):
        if key in obj:
            obj[key] = int(obj[key])
    try:
        return FAMILIES[tag](**obj)
    except TypeError as exc:
        raise ConfigInvalid(f"bad parameters for {tag}: {exc}") from exc


def weyl_operators(d: int) -> list[np.ndarray]:
    """The d^2 unitaries X^m Z^n, ordered with m major."""
    if d < 2:
        raise OutOfRange("Weyl operators need d >= 2")
    x = np.roll(np.eye(d, dtype=complex), 1, axis=0)  # X|l> = |l+1 mod d>
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    out = []
    for m in range(d):
        xm = np.linalg.matrix_power(x, m)
        for n in range(d):
            out.append(xm @ np.linalg.matrix_power(z, n))
    return out


def _noise_kraus(d: int, weight: float) -> np.ndarray:
    k = np.zeros((d * d, d, d), dtype=complex)
    if weight <= 0:
        return k[:0]
    s = np.sqrt(weight / d)
    for i in range(d):
        for j in range(d):
            k[i * d + j, i, j] = s
    return k


def _mixed_unitary_kraus(weights, unitaries, d: int) -> np.ndarray:
    ks = [np.sqrt(w) * np.asarray(u) for w, u in zip(weights, unitaries) if w > 0]
    a = float(sum(weights))
    noise = _noise_kraus(d, 1.0 - a)
    parts = [np.array(ks)] if ks else []
    if noise.shape[0]:
        parts.append(noise)
    return np.concatenate(parts, axis=0)


def build_depolarizing(d: int, a: float) -> KrausChannel:
    spec = Depolarizing(d, a)
    if a < 0:
        c = np.full((d, d), (1 - a) / d**2)
        c[0, 0] = a + (1 - a) / d**2
        chan = build_weyl_channel(d, c)
        return KrausChannel(chan.kraus, unital=True, family=spec)
    return KrausChannel(_mixed_unitary_kraus([a], [np.eye(d)], d), unital=True, family=spec)


def build_generalized(spec: Generalized) -> KrausChannel:
    return KrausChannel(_mixed_unitary_kraus(spec.weights, spec.unitaries, spec.d), unital=True, family=spec)


def build_weyl_channel(d: int, c) -> KrausChannel:
    spec = Weyl(d, c)
    ops = weyl_operators(d)
    flat = spec.c.reshape(-1)
    k = np.array([np.sqrt(w) * u for w, u in zip(flat, ops) if w > 0])
    return KrausChannel(k, unital=True, family=spec)


def build_diagonal(spec: Diagonal) -> KrausChannel:
    return KrausChannel(_mixed_unitary_kraus(spec.weights, spec.unitaries(), spec.d), unital=True, family=spec)


def build_qutrit(spec: Qutrit) -> KrausChannel:
    return KrausChannel(_mixed_unitary_kraus(spec.a_k, spec.unitaries(), 3), unital=True, family=spec)


def build_doubly_depolarizing(d: int, m: int, a: float, b: float) -> KrausChannel:
    spec = DoublyDepolarizing(d, m, a, b)
    return KrausChannel(_mixed_unitary_kraus(spec.weights(), spec.unitaries(), d), unital=True, family=spec)


def _successive_mixture(xs: tuple[float, ...], n: int) -> list[tuple[float, np.ndarray]]:
    """Mixed-unitary decomposition of the n-dimensional successive channel.

    Level n is ``y (1 (+) Psi_{n-1}) + (1-y) * full twirl``, where ``Psi_{n-1}``
    is the same construction on the trailing n-1 levels.
    """
    if n == 1:
        return [(1.0, np.eye(1, dtype=complex))]
    y = xs[0]
    inner = _successive_mixture(xs[1:], n - 1)
    out = []
    for w, u in inner:
        v = np.zeros((n, n), dtype=complex)
        v[0, 0] = 1.0
        v[1:, 1:] = u
        out.append((y * w, v))
    for wop in weyl_operators(n):
        out.append(((1 - y) / n**2, wop))
    return out


def build_successive(d: int, x) -> KrausChannel:
    spec = Successive(d, tuple(x))
    # top level keeps the explicit |i><j| noise tail; inner levels are Weyl mixed
    x1 = spec.x[0]
    inner = _successive_mixture(spec.x[1:], d - 1)
    weights, unitaries = [], []
    for w, u in inner:
        v = np.zeros((d, d), dtype=complex)
        v[0, 0] = 1.0
        v[1:, 1:] = u
        weights.append(x1 * w)
        unitaries.append(v)
    return KrausChannel(_mixed_unitary_kraus(weights, unitaries, d), unital=True, family=spec)


def build_contraction(spec: Contraction) -> KrausChannel:
    d, a = spec.d, spec.a
    ks = []
    for w, v in zip(spec.weights, spec.operators):
        if w <= 0:
            continue
        ks.append(np.sqrt(w) * v)
        s = np.sqrt(w * (1 - a) / (a * d))
        for i in range(d):
            for j in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[i, j] = 1.0
                ks.append(s * (v @ e))
    return KrausChannel(np.array(ks), trace_preserving=False, family=spec)


def build(spec) -> KrausChannel:
    """Construct the Kraus channel for any family record."""
    if isinstance(spec, Depolarizing):
        return build_depolarizing(spec.d, spec.a)
    if isinstance(spec, Generalized):
        return build_generalized(spec)
    if isinstance(spec, Weyl):
        return build_weyl_channel(spec.d, spec.c)
    if isinstance(spec, Diagonal):
        return build_diagonal(spec)
    if isinstance(spec, Qutrit):
        return build_qutrit(spec)
    if isinstance(spec, DoublyDepolarizing):
        return build_doubly_depolarizing(spec.d, spec.m, spec.a, spec.b)
    if isinstance(spec, Successive):
        return build_successive(spec.d, spec.x)
    if isinstance(spec, Contraction):
        return build_contraction(spec)
    raise TypeError(f"not a family spec: {spec!r}")


def family_unitaries(spec) -> list[np.ndarray]:
    """The unitaries V_k of a mixed-unitary family, in construction order."""
    if isinstance(spec, Depolarizing):
        return [np.eye(spec.d, dtype=complex)]
    if isinstance(spec, Generalized):
        return list(spec.unitaries)
    if isinstance(spec, (Diagonal, Qutrit, DoublyDepolarizing)):
        return spec.unitaries()
    if isinstance(spec, Successive):
        d = spec.d
        out = []
        for _, u in _successive_mixture(spec.x[1:], d - 1):
            v = np.zeros((d, d), dtype=complex)
            v[0, 0] = 1.0
            v[1:, 1:] = u
            out.append(v)
        return out
    raise TypeError(f"{type(spec).__name__} has no unitary list")


def qutrit_basis() -> np.ndarray:
    """Columns e_0, e_+, e_- with e_pm = (e_1 pm e_2)/sqrt(2)."""
    s = 1 / np.sqrt(2)
    return np.array([[1, 0, 0], [0, s, s], [0, s, -s]], dtype=complex)
