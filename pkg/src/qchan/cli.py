"""Command-line experiment harness.

Configs are single JSON documents::

    {
      "experiment": "capacity_verify",
      "family": {"family": "doubly_depolarizing", "d": 4, "m": 2,
                 "a": {"start": "0.5", "stop": "0.9", "step": "0.05"},
                 "b": {"values": [0.5, 0.7]}},
      "starts": 50,
      "seed": 0,
      "output": "dd4.csv"
    }

A family value given as ``{"values": [...]}`` or ``{"start", "stop", "step"}``
is a grid axis; anything else is held fixed. Axes expand in the order they
appear, first axis slowest. Qutrit grids take ``a``, ``a0_offset`` (added to
``a/2``), ``a0_margin`` and ``splits`` of the remaining weight ``a - a0``
instead of raw ``a_k``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from functools import partial
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .capacity import (
    capacity_candidate,
    classical_capacity,
    cq_matrix,
    tensor_square_candidate,
    verify_candidate,
)
from .capacity.verify import VERIFY_THRESHOLD
from .channels import Depolarizing, Qutrit, build, choi_matrix, qutrit_basis, spec_from_dict, spec_to_dict, tensor
from .errors import ConfigInvalid, IoFailure, QchanError, RangeInvalid
from .measures import depol_reference, is_ppt, max_output_p_norm, min_output_entropy, min_pt_eigenvalue

KINDS = ("capacity_verify", "additivity", "minent", "pnorm", "sweep", "ppt_scan", "classical_reduce")
ENTANGLED_RECIPES = ("random_bipartite", "max_entangled_phases", "product_sum")
DEFAULT_STARTS = {"capacity_verify": 50, "additivity": 30, "minent": 20, "pnorm": 20, "classical_reduce": 0, "sweep": 0, "ppt_scan": 0}
DEFAULT_TOLERANCES = {"verify": VERIFY_THRESHOLD, "reference": 1e-8, "ppt": 1e-11, "classical": 1e-8}
# families whose S_min and nu_p equal those of the depolarizing channel with the same a
DEPOL_REFERENCE_FAMILIES = ("depolarizing", "qutrit", "doubly_depolarizing", "diagonal", "successive")
MAX_AXIS_LEN = 100_000
QUTRIT_SPLITS = ([1 / 3, 1 / 3, 1 / 3], [0.5, 0.3, 0.2], [0.6, 0.3, 0.1], [0.7, 0.2, 0.1])

PRESETS = {
    "qutrit-6.2.1": {
        "description": "qutrit capacity candidates, a = 0.50..0.90, 50 random starts per point",
        "experiment": "capacity_verify",
        "family": {
            "family": "qutrit",
            "a": {"start": "0.5", "stop": "0.9", "step": "0.02"},
            "a0_offset": {"start": "0.05", "stop": "0.5", "step": "0.05"},
            "a0_margin": "0.01",
            "splits": {"values": [list(s) for s in QUTRIT_SPLITS]},
        },
        "starts": 50,
        "seed": 0,
    },
    "dd4-6.2.1": {
        "description": "doubly depolarizing d=4, m=2 capacity candidates, (a, b) in {0.5, 0.55, .., 0.9}^2",
        "experiment": "capacity_verify",
        "family": {
            "family": "doubly_depolarizing",
            "d": 4,
            "m": 2,
            "a": {"start": "0.5", "stop": "0.9", "step": "0.05"},
            "b": {"start": "0.5", "stop": "0.9", "step": "0.05"},
        },
        "starts": 50,
        "seed": 0,
    },
    "qutrit-additivity": {
        "description": "qutrit tensor-square capacity against 2C, 30 random bipartite starts per point",
        "experiment": "additivity",
        "family": {
            "family": "qutrit",
            "a": {"start": "0.5", "stop": "0.9", "step": "0.02"},
            "a0_offset": {"start": "0.05", "stop": "0.5", "step": "0.05"},
            "a0_margin": "0.01",
            "splits": {"values": [list(s) for s in QUTRIT_SPLITS]},
        },
        "recipes": ["random_bipartite"],
        "starts": 30,
        "seed": 0,
    },
    "dd4-additivity": {
        "description": "doubly depolarizing d=4, m=2 tensor square, (a, b) in {0.5, 0.52, .., 0.98}^2",
        "experiment": "additivity",
        "family": {
            "family": "doubly_depolarizing",
            "d": 4,
            "m": 2,
            "a": {"start": "0.5", "stop": "0.98", "step": "0.02"},
            "b": {"start": "0.5", "stop": "0.98", "step": "0.02"},
        },
        "recipes": list(ENTANGLED_RECIPES),
        "starts": 30,
        "seed": 0,
    },
    "diagonal-capacity": {
        "description": "diagonal unitary families: candidate (I/d, log2 d - S_min) verified",
        "experiment": "capacity_verify",
        "family": {
            "family": "diagonal",
            "d": 3,
            "weights": {"values": [[0.3, 0.2], [0.4, 0.3], [0.5, 0.2], [0.6, 0.3]]},
            "phases": [[0.0, 0.0, 0.0], [0.0, 2.0943951023931953, 4.1887902047863905]],
        },
        "starts": 50,
        "seed": 0,
    },
    "ppt-boundary": {
        "description": "Choi partial-transpose minimum eigenvalue around a = 1/(d+1)",
        "experiment": "ppt_scan",
        "family": {
            "family": "depolarizing",
            "d": {"values": [2, 3, 4]},
            "a_offset": {"values": ["-0.05", "0", "0.05"]},
        },
        "seed": 0,
    },
}


# ---------------------------------------------------------------- config


@dataclass
class ExperimentConfig:
    experiment: str
    family: dict
    seed: int
    starts: int
    recipes: tuple[str, ...] | None = None
    tolerances: dict = field(default_factory=dict)
    p_values: tuple = (1.5, 2.0, "inf")
    output: str | None = None
    certificates: str | None = None

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigInvalid("config must be a JSON object")
        kind = obj.get("experiment")
        if kind not in KINDS:
            raise ConfigInvalid(f"experiment must be one of {KINDS}, got {kind!r}")
        if "seed" not in obj:
            raise ConfigInvalid("config needs a seed")
        fam = obj.get("family")
        if not isinstance(fam, dict) or "family" not in fam:
            raise ConfigInvalid("config needs a family object with a 'family' tag")
        unknown = set(obj) - {"experiment", "family", "seed", "starts", "recipes", "tolerances", "p_values", "output", "certificates", "description"}
        if unknown:
            raise ConfigInvalid(f"unknown config keys {sorted(unknown)}")
        tol = dict(DEFAULT_TOLERANCES)
        for k, v in (obj.get("tolerances") or {}).items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigInvalid(f"unknown tolerance {k!r}")
            tol[k] = _real(v)
        try:
            seed = int(obj["seed"])
            starts = int(obj.get("starts", DEFAULT_STARTS[kind]))
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"seed and starts must be integers: {exc}") from exc
        if starts < 0:
            raise ConfigInvalid("starts must be non-negative")
        recipes = obj.get("recipes")
        return cls(
            experiment=kind,
            family=fam,
            seed=seed,
            starts=starts,
            recipes=tuple(recipes) if recipes else None,
            tolerances=tol,
            p_values=tuple(obj.get("p_values", (1.5, 2.0, "inf"))),
            output=obj.get("output"),
            certificates=obj.get("certificates"),
        )


def _real(v) -> float:
    try:
        return float(Decimal(str(v)))
    except (InvalidOperation, ValueError) as exc:
        raise ConfigInvalid(f"not a real number: {v!r}") from exc


def _is_axis(v) -> bool:
    return isinstance(v, dict) and ("values" in v or "start" in v)


def expand_range(r: dict) -> list:
    """Values of a ``{"values"}`` list or an inclusive ``{"start", "stop", "step"}`` range.

    Range arithmetic is done in decimal so that ``0.5, 0.52, ..`` comes out
    exactly as written.
    """
    if "values" in r:
        if not isinstance(r["values"], list):
            raise RangeInvalid("'values' must be a list")
        return list(r["values"])
    try:
        start, stop, step = (Decimal(str(r[k])) for k in ("start", "stop", "step"))
    except KeyError as exc:
        raise RangeInvalid(f"range needs start, stop and step; missing {exc}") from exc
    except InvalidOperation as exc:
        raise RangeInvalid(f"range bounds must be numbers: {r}") from exc
    if step <= 0:
        raise RangeInvalid("range step must be positive")
    if start > stop:
        raise RangeInvalid("range start exceeds stop")
    scale = max(abs(float(start)), abs(float(stop)), 1e-300)
    if float(step) <= 4 * np.finfo(float).eps * scale:
        raise RangeInvalid("range step is below the representable increment")
    n = int((stop - start) / step) + 1
    if n > MAX_AXIS_LEN:
        raise RangeInvalid(f"range has {n} values, more than {MAX_AXIS_LEN}")
    return [float(start + k * step) for k in range(n)]


def _qutrit_points(fixed: dict, axes: dict) -> list[Qutrit]:
    margin = _real(fixed.pop("a0_margin", "0.01"))
    theta = fixed.pop("theta", 0.0)
    splits = fixed.pop("splits", None)
    names = list(axes)
    out = []
    for combo in product(*(axes[k] for k in names)):
        p = dict(fixed)
        p.update(zip(names, combo))
        p.setdefault("theta", theta)
        if "splits" in p:
            splits_here = [p.pop("splits")]
        else:
            splits_here = [splits] if splits is not None else [list(QUTRIT_SPLITS[0])]
        if "a_k" in p:
            out.append(Qutrit(tuple(_real(x) for x in p["a_k"]), theta=_real(p["theta"])))
            continue
        a = _real(p["a"])
        a0 = float(Decimal(str(p["a"])) / 2 + Decimal(str(p["a0_offset"])))
        if a0 > a - margin + 1e-12:
            continue
        for s in splits_here:
            s = [_real(x) for x in s]
            if len(s) != 3 or abs(sum(s) - 1) > 1e-12:
                raise ConfigInvalid(f"qutrit split must be three fractions summing to 1, got {s}")
            rest = a - a0
            out.append(Qutrit((a0, s[0] * rest, s[1] * rest, s[2] * rest), theta=_real(p["theta"])))
    return out


def expand_grid(config: ExperimentConfig | dict) -> list:
    """All family specs of the config's grid, first axis varying slowest.

    Accepts a validated config, a raw config dict or a bare family dict.
    """
    if isinstance(config, dict) and "experiment" in config:
        config = ExperimentConfig.from_dict(config)
    fam = dict(config.family if isinstance(config, ExperimentConfig) else config)
    tag = fam.pop("family")
    axes = {k: expand_range(v) for k, v in fam.items() if _is_axis(v)}
    fixed = {k: v for k, v in fam.items() if not _is_axis(v)}
    try:
        if tag == "qutrit":
            return _qutrit_points(fixed, axes)
        names = list(axes)
        out = []
        for combo in product(*(axes[k] for k in names)):
            p = dict(fixed)
            p.update(zip(names, combo))
            if tag == "depolarizing" and "a_offset" in p:
                p["a"] = 1.0 / (int(p["d"]) + 1) + _real(p.pop("a_offset"))
            out.append(spec_from_dict({"family": tag, **p}))
        return out
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ConfigInvalid):
            raise
        raise ConfigInvalid(f"bad {tag} parameters: {exc}") from exc


# ---------------------------------------------------------------- evaluation


def _flat_params(spec) -> dict:
    d = spec_to_dict(spec)
    d.pop("family")
    out = {}
    if isinstance(spec, Qutrit):
        out["a"] = spec.a
    for k, v in d.items():
        if isinstance(v, list) and all(isinstance(x, (int, float)) for x in v):
            out.update({f"{k}_{i}": x for i, x in enumerate(v)})
        elif isinstance(v, (int, float, str)):
            out[k] = v
        else:
            out[k] = json.dumps(v)
    return out


def _basis_for(spec):
    return qutrit_basis() if isinstance(spec, Qutrit) else None


def _certificate_record(kind, spec, cert, recipes) -> dict:
    rec = cert.record(spec.tag, spec_to_dict(spec))
    rec.update(experiment=kind, recipes=list(recipes), threshold=cert.threshold, all_converged=cert.all_converged)
    return rec


def evaluate_point(kind: str, spec, settings: dict) -> tuple[list[dict], dict | None]:
    """Rows (usually one) and an optional certificate record for one grid point."""
    t0 = time.perf_counter()
    seed, starts, tol = settings["seed"], settings["starts"], settings["tolerances"]
    base = {"family": spec.tag, **_flat_params(spec)}
    rows: list[dict] = []
    cert_rec = None
    chan = build(spec)
    d = chan.dim

    def finish(row):
        row.update(seed=seed, wall_ms=round(1000 * (time.perf_counter() - t0), 3), version=__version__)
        rows.append(row)

    if kind in ("capacity_verify", "additivity"):
        cand = capacity_candidate(spec)
        if kind == "additivity":
            cand = tensor_square_candidate(cand)
            chan = tensor(chan, chan)
            recipes = settings["recipes"] or ENTANGLED_RECIPES
            dims = (d, d)
        else:
            recipes = settings["recipes"] or ("random_pure",)
            dims = None
        cert = verify_candidate(chan, cand.avg_output, cand.c_star, starts=starts, seed=seed, recipes=recipes, dims=dims, threshold=tol["verify"])
        dim = chan.dim
        row = dict(base)
        row.update(
            c_star_bits=cand.c_star,
            s_min_bits=cand.s_min,
            gap_logd=math.log2(dim) - cand.s_min - cand.c_star,
            worst_violation=cert.worst_violation,
            verified=cert.verified and cert.all_converged,
            starts=cert.starts,
        )
        if cand.ensemble is not None:
            row["avg_dist_mixed"] = float(np.linalg.norm(cand.ensemble.average - np.eye(d) / d))
        row.update(converged=cert.all_converged, iterations_max=cert.iterations_max)
        finish(row)
        cert_rec = _certificate_record(kind, spec, cert, recipes)
    elif kind == "minent":
        rep = min_output_entropy(chan, starts=starts, seed=seed, recipes=settings["recipes"])
        row = dict(base, s_min_bits=rep.optimum_value)
        ok = rep.all_converged
        if spec.tag in DEPOL_REFERENCE_FAMILIES:
            ref = depol_reference(d, spec.a)
            row.update(s_min_reference=ref, abs_error=abs(rep.optimum_value - ref))
            ok = ok and abs(rep.optimum_value - ref) <= tol["reference"]
        row.update(verified=ok, converged=rep.all_converged, starts=rep.starts_used)
        finish(row)
    elif kind == "pnorm":
        for p in settings["p_values"]:
            pv = math.inf if str(p) in ("inf", "infinity") else _real(p)
            rep = max_output_p_norm(chan, pv, starts=starts, seed=seed, recipes=settings["recipes"])
            row = dict(base, p=str(p), nu_p=rep.optimum_value)
            ok = rep.all_converged
            if spec.tag in DEPOL_REFERENCE_FAMILIES:
                ref = depol_reference(d, spec.a, pv)
                row.update(nu_p_reference=ref, abs_error=abs(rep.optimum_value - ref))
                ok = ok and abs(rep.optimum_value - ref) <= tol["reference"]
            row.update(verified=ok, converged=rep.all_converged, starts=rep.starts_used)
            finish(row)
    elif kind == "sweep":
        cand = capacity_candidate(spec)
        row = dict(base, c_star_bits=cand.c_star, s_min_bits=cand.s_min, gap_logd=math.log2(d) - cand.s_min - cand.c_star)
        if cand.ensemble is not None:
            row["avg_dist_mixed"] = float(np.linalg.norm(cand.ensemble.average - np.eye(d) / d))
        row["verified"] = True
        finish(row)
    elif kind == "ppt_scan":
        if not isinstance(spec, Depolarizing):
            raise ConfigInvalid("ppt_scan runs on the depolarizing family")
        lam = min_pt_eigenvalue(choi_matrix(chan), d, d)
        ref = -spec.a / d + (1 - spec.a) / d**2
        boundary = 1.0 / (d + 1)
        ppt = is_ppt(choi_matrix(chan), d, d, tol["ppt"])
        expected = spec.a <= boundary + tol["ppt"]
        row = dict(base, boundary=boundary, min_pt_eigenvalue=lam, min_pt_reference=ref, ppt=ppt)
        row["verified"] = bool(abs(lam - ref) <= tol["ppt"] and ppt == expected)
        finish(row)
    elif kind == "classical_reduce":
        c_cq, p = classical_capacity(cq_matrix(chan, _basis_for(spec)))
        cand = capacity_candidate(spec)
        diff = abs(c_cq - cand.c_star)
        row = dict(base, c_classical_bits=c_cq, c_star_bits=cand.c_star, abs_error=diff)
        if cand.ensemble is not None:
            row["weights_error"] = float(np.max(np.abs(p - cand.ensemble.weights)))
        row["verified"] = bool(diff <= tol["classical"])
        finish(row)
    else:  # pragma: no cover - guarded by ExperimentConfig
        raise ConfigInvalid(f"unknown experiment {kind!r}")
    return rows, cert_rec


def _evaluate_task(kind, settings, spec):
    return evaluate_point(kind, spec, settings)


@dataclass
class RunResult:
    rows: list[dict]
    certificates: list[dict]

    @property
    def ok(self) -> bool:
        return all(bool(r.get("verified", True)) and bool(r.get("converged", True)) for r in self.rows)


def _workers() -> int:
    v = os.environ.get("QCHAN_THREADS")
    if not v:
        return 1
    try:
        n = int(v)
    except ValueError as exc:
        raise ConfigInvalid(f"QCHAN_THREADS must be an integer, got {v!r}") from exc
    return max(1, n)


def run(config: ExperimentConfig | dict, seed: int | None = None, starts: int | None = None) -> RunResult:
    """Evaluate every grid point of ``config``; deterministic given the seed.

    ``QCHAN_SEED`` overrides the config seed and an explicit ``seed``
    argument overrides both. ``QCHAN_THREADS`` sets the number of worker
    processes across grid points; rows always come back in grid order.
    """
    cfg = config if isinstance(config, ExperimentConfig) else ExperimentConfig.from_dict(config)
    if seed is None and os.environ.get("QCHAN_SEED"):
        try:
            seed = int(os.environ["QCHAN_SEED"])
        except ValueError as exc:
            raise ConfigInvalid("QCHAN_SEED must be an integer") from exc
    settings = {
        "seed": cfg.seed if seed is None else int(seed),
        "starts": cfg.starts if starts is None else int(starts),
        "recipes": cfg.recipes,
        "tolerances": cfg.tolerances,
        "p_values": cfg.p_values,
    }
    specs = expand_grid(cfg)
    task = partial(_evaluate_task, cfg.experiment, settings)
    workers = _workers()
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, specs))
    else:
        results = [task(s) for s in specs]
    rows = [r for rs, _ in results for r in rs]
    certs = [c for _, c in results if c is not None]
    return RunResult(rows, certs)


# ---------------------------------------------------------------- persistence


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def write_rows(rows: list[dict], path: str | Path) -> None:
    cols: list[str] = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    try:
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            for r in rows:
                w.writerow({k: _fmt(v) for k, v in r.items()})
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def sidecar_path(csv_path: str | Path) -> Path:
    p = Path(csv_path)
    return p.with_name(p.stem + ".certs.json")


def write_certificates(certs: list[dict], path: str | Path, config: dict) -> None:
    doc = {"version": __version__, "config": config, "certificates": certs}
    try:
        Path(path).write_text(json.dumps(doc, indent=1))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path} is not valid JSON: {exc}") from exc


def recheck_certificate(rec: dict, tol: float = 1e-12) -> tuple[bool, str]:
    """Recompute a stored certificate from its family record, seed and starts."""
    spec = spec_from_dict(rec["params"])
    cand = capacity_candidate(spec)
    chan = build(spec)
    dims = None
    if rec.get("experiment") == "additivity":
        cand = tensor_square_candidate(cand)
        dims = (chan.dim, chan.dim)
        chan = tensor(chan, chan)
    if abs(cand.c_star - rec["candidate_capacity"]) > tol:
        return False, f"candidate capacity {cand.c_star!r} differs from stored {rec['candidate_capacity']!r}"
    recipes = rec.get("recipes") or ["random_pure"]
    n_random = rec["starts"]
    cert = verify_candidate(chan, cand.avg_output, cand.c_star, starts=n_random, seed=rec["seed"], recipes=recipes, dims=dims, threshold=rec.get("threshold", VERIFY_THRESHOLD))
    if abs(cert.worst_violation - rec["worst_violation"]) > tol:
        return False, f"worst violation {cert.worst_violation!r} differs from stored {rec['worst_violation']!r}"
    if cert.verified != rec["verified"]:
        return False, "verified flag differs"
    if not cert.verified:
        return False, f"certificate fails: worst violation {cert.worst_violation:.3e}"
    return True, f"ok, worst violation {cert.worst_violation:.3e}"


# ---------------------------------------------------------------- entry point


def _run_and_write(cfg_dict: dict, out: str | None, seed: int | None, starts: int | None) -> int:
    cfg = ExperimentConfig.from_dict(cfg_dict)
    res = run(cfg, seed=seed, starts=starts)
    out = out or cfg.output
    if out:
        write_rows(res.rows, out)
        if res.certificates:
            write_certificates(res.certificates, cfg.certificates or sidecar_path(out), cfg_dict)
    bad = [r for r in res.rows if not (r.get("verified", True) and r.get("converged", True))]
    print(f"{len(res.rows)} rows, {len(bad)} failing" + (f", written to {out}" if out else ""))
    for r in bad[:10]:
        print("  FAIL", {k: r[k] for k in r if k not in ("wall_ms", "version")})
    return 0 if res.ok else 1


def _cmd_verify(path: str) -> int:
    doc = _load_json(path)
    if "certificates" not in doc:
        cfg = ExperimentConfig.from_dict(doc)
        out = cfg.certificates or (sidecar_path(cfg.output) if cfg.output else None)
        if out is None:
            raise ConfigInvalid("config has no output path, so there are no stored certificates to check")
        doc = _load_json(out)
    failures = 0
    for rec in doc["certificates"]:
        ok, msg = recheck_certificate(rec)
        failures += not ok
        print(("PASS " if ok else "FAIL ") + f"{rec['family']} {json.dumps(rec['params'])}: {msg}")
    print(f"{len(doc['certificates'])} certificates, {failures} failing")
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="qchan", description="Output purity and capacity experiments for structured quantum channels.")
    ap.add_argument("--version", action="version", version=f"qchan {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config")
    p_run.add_argument("--out")
    p_pre = sub.add_parser("preset", help="run a named preset grid")
    p_pre.add_argument("name", choices=sorted(PRESETS))
    p_pre.add_argument("--seed", type=int)
    p_pre.add_argument("--out")
    p_pre.add_argument("--starts", type=int)
    p_ver = sub.add_parser("verify", help="re-check stored certificates")
    p_ver.add_argument("path")
    sub.add_parser("list-presets", help="list preset names")
    args = ap.parse_args(argv)
    try:
        if args.cmd == "list-presets":
            for name in sorted(PRESETS):
                print(f"{name:20s} {PRESETS[name]['description']}")
            return 0
        if args.cmd == "run":
            return _run_and_write(_load_json(args.config), args.out, None, None)
        if args.cmd == "preset":
            cfg = dict(PRESETS[args.name])
            return _run_and_write(cfg, args.out or f"{args.name}.csv", args.seed, args.starts)
        return _cmd_verify(args.path)
    except QchanError as exc:
        print(f"qchan: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
