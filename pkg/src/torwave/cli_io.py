"""Job-file front end: sample modes on grids, run checks, export CSV + JSON.

A job is one JSON document::

    {
      "name": "ring-demo",
      "task": "mode-eval",
      "mode": {"rho0": 1.0, "omega": 3.0, "m": 1, "l": 0, "kind": "singular",
               "tau0": 0.01, "amplitude": 1.0, "scaling_exponent": 0.0},
      "quadrature": {"n_eta": 16, "n_phi": 128},
      "grid": {"system": "modified",
               "axes": {"tau": {"start": 0.3, "stop": 0.7, "num": 3},
                        "eta": {"start": 0.0, "stop": 6.283185307179586, "num": 4, "endpoint": false},
                        "phi": {"start": 0.0, "stop": 6.283185307179586, "num": 8, "endpoint": false}}}
    }

Angles are radians, lengths are in units of ``rho0``.  ``run_job`` writes
``<name>.csv`` and ``<name>.meta.json`` into the output directory.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, coords
from .coords import DomainError
from .cyl_modes import CylModeSpec, as_harmonic_mode
from .field_algebra import beltrami_residual
from .observables import ShellDomain, energy_density, flux_through_torus, poynting, shell_integrals
from .ring_integral import RingModeSpec, build_quadrature, check_standoff, ring_mode, tau0_scaling_study
from .specfun import BesselKind

__all__ = [
    "TASKS",
    "FIELD_GRID_COLUMNS",
    "ConfigError",
    "JobConfig",
    "load_config",
    "validate_config",
    "run_job",
    "main",
]

TASKS = ("mode-eval", "cyl-mode", "residual-check", "flux", "mass-spin", "convergence")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

FIELD_GRID_COLUMNS = {
    "tau": "modified toroidal coordinate tau (0 on the ring, 1 on the axis)",
    "eta": "modified toroidal angle eta in (-pi, pi], radians",
    "phi": "azimuth in [0, 2 pi), radians",
    "x": "Cartesian x, units of length",
    "y": "Cartesian y",
    "z": "Cartesian z",
    "re_fx": "Re F_x = E_x",
    "im_fx": "Im F_x = B_x",
    "re_fy": "Re F_y = E_y",
    "im_fy": "Im F_y = B_y",
    "re_fz": "Re F_z = E_z",
    "im_fz": "Im F_z = B_z",
    "energy": "energy density (|E|^2 + |B|^2) / 8 pi",
    "px": "Poynting vector x component, E x B / 4 pi",
    "py": "Poynting vector y component",
    "pz": "Poynting vector z component",
}

TASK_COLUMNS = {
    "mode-eval": FIELD_GRID_COLUMNS,
    "cyl-mode": FIELD_GRID_COLUMNS,
    "residual-check": {
        **{k: FIELD_GRID_COLUMNS[k] for k in ("tau", "eta", "phi", "x", "y", "z")},
        "curl_residual": "|curl F - omega F| / |omega F| by central differences",
        "div_residual": "|div F| / |omega F| by central differences",
    },
    "flux": {
        "tau_s": "tau of the torus the flux is taken through",
        "n_eta": "trapezoid nodes in eta",
        "n_phi": "trapezoid nodes in phi",
        "flux": "outward Poynting flux through the torus",
    },
    "mass-spin": {
        "tau_min": "inner tau of the shell",
        "tau_max": "outer tau of the shell",
        "volume": "shell volume from the same quadrature",
        "mass": "integrated energy density",
        "spin": "norm of the integrated r x P",
        "lx": "integrated angular momentum, x",
        "ly": "integrated angular momentum, y",
        "lz": "integrated angular momentum, z",
    },
    "convergence": {
        "tau0": "radius coordinate of the source torus",
        "re_fx": "Re F_x at the target (unscaled)",
        "im_fx": "Im F_x",
        "re_fy": "Re F_y",
        "im_fy": "Im F_y",
        "re_fz": "Re F_z",
        "im_fz": "Im F_z",
        "norm": "|F| at the target",
    },
}


class ConfigError(ValueError):
    """Invalid job configuration; ``messages`` holds one entry per bad field."""

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


@dataclass
class JobConfig:
    name: str
    task: str
    raw: dict
    ring: RingModeSpec | None = None
    cyl: CylModeSpec | None = None
    grid: dict | None = None
    extras: dict = field(default_factory=dict)


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read job file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"job file is not valid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ConfigError(["job file must contain a JSON object"])
    return doc


def _complex(value, where: str, errors: list) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict) and set(value) <= {"re", "im"}:
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, (int, float)):
        return complex(value)
    errors.append(f"{where}: expected a number, [re, im] or {{'re', 'im'}}, got {value!r}")
    return 1.0


def _axis(spec, where: str, errors: list) -> np.ndarray | None:
    if isinstance(spec, (int, float)):
        return np.array([float(spec)])
    if isinstance(spec, list):
        try:
            return np.asarray(spec, dtype=float)
        except (TypeError, ValueError):
            errors.append(f"{where}: list entries must be numbers")
            return None
    if not isinstance(spec, dict):
        errors.append(f"{where}: expected a number, a list, or {{start, stop, num}}")
        return None
    missing = [k for k in ("start", "stop", "num") if k not in spec]
    if missing:
        errors.append(f"{where}: missing {', '.join(missing)}")
        return None
    num = spec["num"]
    if not isinstance(num, int) or num < 1:
        errors.append(f"{where}.num: must be a positive integer")
        return None
    return np.linspace(float(spec["start"]), float(spec["stop"]), num, endpoint=bool(spec.get("endpoint", True)))


_SYSTEM_AXES = {
    "modified": ("tau", "eta", "phi"),
    "cylindrical": ("rho", "phi", "z"),
    "cartesian": ("x", "y", "z"),
}


def _grid(doc: dict, errors: list) -> dict | None:
    g = doc.get("grid")
    if g is None:
        errors.append("grid: required for this task")
        return None
    system = g.get("system", "modified")
    if system not in _SYSTEM_AXES:
        errors.append(f"grid.system: must be one of {sorted(_SYSTEM_AXES)}, got {system!r}")
        return None
    axes = g.get("axes", {})
    values = {}
    for name in _SYSTEM_AXES[system]:
        if name not in axes:
            errors.append(f"grid.axes.{name}: required for system {system!r}")
            continue
        arr = _axis(axes[name], f"grid.axes.{name}", errors)
        if arr is not None:
            values[name] = arr
    if len(values) != 3:
        return None
    if system == "modified" and (np.any(values["tau"] <= 0) or np.any(values["tau"] >= 1)):
        errors.append("grid.axes.tau: values must lie strictly between 0 and 1")
    if system == "cylindrical" and np.any(values["rho"] < 0):
        errors.append("grid.axes.rho: values must be non-negative")
    return {"system": system, "values": values}


def _ring_spec(doc: dict, errors: list) -> RingModeSpec | None:
    mode = doc.get("mode")
    if not isinstance(mode, dict):
        errors.append("mode: required object")
        return None
    quad = doc.get("quadrature", {})
    kw = {}
    for key, conv in (("omega", float), ("rho0", float), ("tau0", float), ("scaling_exponent", float)):
        if key in mode:
            try:
                kw[key] = conv(mode[key])
            except (TypeError, ValueError):
                errors.append(f"mode.{key}: must be a number")
    for key in ("m", "l"):
        if key in mode:
            if not isinstance(mode[key], int) or isinstance(mode[key], bool):
                errors.append(f"mode.{key}: must be an integer")
            else:
                kw[key] = mode[key]
    for key in ("n_eta", "n_phi"):
        if key in quad:
            if not isinstance(quad[key], int):
                errors.append(f"quadrature.{key}: must be an integer")
            else:
                kw[key] = quad[key]
    if "kind" in mode:
        try:
            kw["kind"] = BesselKind.parse(mode["kind"])
        except ValueError as exc:
            errors.append(f"mode.kind: {exc}")
    if "amplitude" in mode:
        kw["amplitude"] = _complex(mode["amplitude"], "mode.amplitude", errors)
    for key in ("omega", "m"):
        if key not in kw and not any(e.startswith(f"mode.{key}") for e in errors):
            errors.append(f"mode.{key}: required")
    if errors:
        return None
    try:
        return RingModeSpec(**kw)
    except ValueError as exc:
        msg = str(exc)
        fieldname = next(
            (f for f in ("m", "omega", "tau0", "n_eta", "n_phi", "l", "amplitude", "rho0") if msg.startswith(f)),
            None,
        )
        if msg.startswith("ring winding number"):
            fieldname = "m"
        elif msg.startswith("omega="):
            fieldname = "omega"
        prefix = "quadrature" if fieldname in ("n_eta", "n_phi") else "mode"
        errors.append(f"{prefix}.{fieldname or 'spec'}: {msg}")
        return None


def _cyl_spec(doc: dict, errors: list) -> CylModeSpec | None:
    mode = doc.get("mode", {})
    cyl = doc.get("cyl", {})
    try:
        return CylModeSpec(
            omega=float(mode["omega"]),
            k=float(cyl.get("k", mode.get("k", 0.0))),
            l=int(mode.get("l", 0)),
            kind=BesselKind.parse(mode.get("kind", "regular")),
            amplitude=_complex(mode.get("amplitude", 1.0), "mode.amplitude", errors),
        )
    except KeyError:
        errors.append("mode.omega: required")
    except (TypeError, ValueError) as exc:
        errors.append(f"cyl: {exc}")
    return None


def validate_config(doc: dict) -> JobConfig:
    """Check a job document against every precondition; raise :class:`ConfigError`."""
    errors: list[str] = []
    name = doc.get("name", "job")
    if not isinstance(name, str) or not name or any(c in name for c in "/\\"):
        errors.append("name: must be a non-empty file stem without path separators")
    task = doc.get("task")
    if task not in TASKS:
        errors.append(f"task: must be one of {list(TASKS)}, got {task!r}")
        raise ConfigError(errors)
    cfg = JobConfig(name=name, task=task, raw=copy.deepcopy(doc))
    if task == "cyl-mode" or (task == "residual-check" and doc.get("field", "ring") == "cyl"):
        cfg.cyl = _cyl_spec(doc, errors)
    else:
        cfg.ring = _ring_spec(doc, errors)
    if task in ("mode-eval", "cyl-mode", "residual-check"):
        cfg.grid = _grid(doc, errors)
    if task == "residual-check":
        h = doc.get("fd_step")
        if h is not None and not (isinstance(h, (int, float)) and h > 0):
            errors.append("fd_step: must be a positive number")
        if doc.get("field", "ring") not in ("ring", "cyl"):
            errors.append("field: must be 'ring' or 'cyl'")
    if task == "flux":
        fl = doc.get("flux", {})
        tau_s = fl.get("tau_s", 0.5)
        if not (isinstance(tau_s, (int, float)) and 0 < tau_s < 1):
            errors.append("flux.tau_s: must lie strictly between 0 and 1")
        for key in ("n_eta", "n_phi"):
            v = fl.get(key, 32)
            if not isinstance(v, int) or v < 4:
                errors.append(f"flux.{key}: must be an integer >= 4")
        cfg.extras["flux"] = {"tau_s": tau_s, "n_eta": fl.get("n_eta", 32), "n_phi": fl.get("n_phi", 64)}
    if task == "mass-spin":
        sh = doc.get("shell", {})
        try:
            cfg.extras["shell"] = ShellDomain(
                tau_min=float(sh.get("tau_min", 0.3)),
                tau_max=float(sh.get("tau_max", 0.7)),
                rho0=cfg.ring.rho0 if cfg.ring else 1.0,
                n_tau=int(sh.get("n_tau", 8)),
                n_eta=int(sh.get("n_eta", 16)),
                n_phi=int(sh.get("n_phi", 32)),
            )
        except (TypeError, ValueError) as exc:
            errors.append(f"shell: {exc}")
    if task == "convergence":
        conv = doc.get("convergence", {})
        seq = conv.get("tau0_sequence", [0.2, 0.1, 0.05, 0.025])
        target = conv.get("target", [0.5, 0.8, 0.3])
        ok = isinstance(seq, list) and len(seq) >= 4 and all(isinstance(t, (int, float)) for t in seq)
        if not ok:
            errors.append("convergence.tau0_sequence: need a list of at least four numbers")
        elif any(b >= a for a, b in zip(seq, seq[1:])) or min(seq) <= 0 or max(seq) > 0.3:
            errors.append("convergence.tau0_sequence: must be strictly decreasing within (0, 0.3]")
        if not (isinstance(target, list) and len(target) == 3 and 0 < float(target[0]) < 1):
            errors.append("convergence.target: must be [tau, eta, phi] with 0 < tau < 1")
        cfg.extras["convergence"] = {"tau0_sequence": seq, "target": target}
    if errors:
        raise ConfigError(errors)
    return cfg


def _grid_points(cfg: JobConfig) -> np.ndarray:
    g = cfg.grid
    names = _SYSTEM_AXES[g["system"]]
    mesh = np.meshgrid(*(g["values"][n] for n in names), indexing="ij")
    a, b, c = (m.ravel() for m in mesh)
    if g["system"] == "modified":
        rho0 = cfg.ring.rho0 if cfg.ring else 1.0
        return coords.modified_to_cartesian(a, b, c, rho0)
    if g["system"] == "cylindrical":
        return coords.cylindrical_to_cartesian(a, b, c)
    return np.stack([a, b, c], axis=-1)


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _field_rows(xyz: np.ndarray, F: np.ndarray, rho0: float) -> list[list[str]]:
    tau, eta, phi = coords.cartesian_to_modified(xyz, rho0)
    en = energy_density(F)
    P = poynting(F)
    cols = [tau, eta, phi, xyz[:, 0], xyz[:, 1], xyz[:, 2]]
    for i in range(3):
        cols += [F[:, i].real, F[:, i].imag]
    cols += [en, P[:, 0], P[:, 1], P[:, 2]]
    data = np.column_stack(cols)
    if not np.all(np.isfinite(data)):
        raise DomainError("non-finite field values on the grid (grid touches a singularity?)")
    return [[_fmt(v) for v in row] for row in data]


def _execute(cfg: JobConfig, threads: int) -> tuple[list[list[str]], dict]:
    diag: dict = {}
    task = cfg.task
    if task in ("mode-eval", "residual-check") and cfg.ring is not None:
        quad = build_quadrature(cfg.ring)
        diag["quadrature"] = {
            "n_nodes": quad.n_nodes,
            "node_spacing": quad.spacing,
            "standoff_factor": 3.0,
        }
    if task == "mode-eval":
        xyz = _grid_points(cfg)
        dist = check_standoff(quad, xyz)
        diag["quadrature"]["min_target_distance"] = float(dist.min())
        F = ring_mode(cfg.ring, threads=threads)(xyz)
        return _field_rows(xyz, F, cfg.ring.rho0), diag
    if task == "cyl-mode":
        xyz = _grid_points(cfg)
        F = as_harmonic_mode(cfg.cyl)(xyz)
        diag["cyl"] = {"k_rho": cfg.cyl.k_rho}
        return _field_rows(xyz, F, 1.0), diag
    if task == "residual-check":
        xyz = _grid_points(cfg)
        if cfg.ring is not None:
            mode = ring_mode(cfg.ring, threads=threads)
            rho0 = cfg.ring.rho0
        else:
            mode = as_harmonic_mode(cfg.cyl)
            rho0 = 1.0
        h = float(cfg.raw.get("fd_step", 1e-4 * rho0))
        curl_res, div_res = beltrami_residual(mode, xyz, h)
        tau, eta, phi = coords.cartesian_to_modified(xyz, rho0)
        data = np.column_stack([tau, eta, phi, xyz, curl_res, div_res])
        diag["residual"] = {"fd_step": h, "max_curl": float(curl_res.max()), "max_div": float(div_res.max())}
        return [[_fmt(v) for v in row] for row in data], diag
    if task == "flux":
        fl = cfg.extras["flux"]
        mode = ring_mode(cfg.ring, threads=threads)
        value = flux_through_torus(mode, fl["tau_s"], cfg.ring.rho0, fl["n_eta"], fl["n_phi"])
        diag["flux"] = {"value": value}
        return [[_fmt(fl["tau_s"]), str(fl["n_eta"]), str(fl["n_phi"]), _fmt(value)]], diag
    if task == "mass-spin":
        shell = cfg.extras["shell"]
        res = shell_integrals(ring_mode(cfg.ring, threads=threads), shell)
        row = [shell.tau_min, shell.tau_max, res.volume, res.mass, res.spin, *res.angular_momentum]
        diag["shell"] = {"n_tau": shell.n_tau, "n_eta": shell.n_eta, "n_phi": shell.n_phi}
        return [[_fmt(v) for v in row]], diag
    if task == "convergence":
        conv = cfg.extras["convergence"]
        study = tau0_scaling_study(cfg.ring, conv["target"], conv["tau0_sequence"], threads=threads)
        rows = []
        for t0, f in zip(study.tau0, study.fields):
            vals = [t0]
            for i in range(3):
                vals += [f[i].real, f[i].imag]
            vals.append(np.sqrt(np.sum(np.abs(f) ** 2)))
            rows.append([_fmt(v) for v in vals])
        diag["scaling"] = {
            "exponent": study.exponent,
            "component_exponents": [None if np.isnan(v) else float(v) for v in study.component_exponents],
            "local_exponents": [float(v) for v in study.local_exponents],
        }
        return rows, diag
    raise AssertionError(task)


def _csv_bytes(columns, rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue().encode()


def run_job(doc: dict, out_dir=".", threads: int = 1) -> tuple[Path, Path]:
    """Validate and execute a job; return the CSV and sidecar paths.

    Raises :class:`ConfigError`, :class:`DomainError` (or ``ValueError``
    from numerical preconditions) and ``OSError``.
    """
    start = time.perf_counter()
    cfg = validate_config(doc)
    rows, diag = _execute(cfg, max(1, int(threads)))
    columns = list(TASK_COLUMNS[cfg.task])
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{cfg.name}.csv"
    meta_path = out / f"{cfg.name}.meta.json"
    csv_path.write_bytes(_csv_bytes(columns, rows))
    meta = {
        "software": {"name": "torwave", "version": __version__},
        "config": cfg.raw,
        "task": cfg.task,
        "rows": len(rows),
        "schema": [{"name": c, "description": TASK_COLUMNS[cfg.task][c]} for c in columns],
        "diagnostics": diag,
        "threads": threads,
        "elapsed_seconds": time.perf_counter() - start,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    meta_path.write_text(json.dumps(meta, indent=2, default=_json_default) + "\n")
    return csv_path, meta_path


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="torwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="execute a job file")
    p_run.add_argument("job", help="path to the JSON job file")
    p_run.add_argument("--out", default=".", help="output directory (default: current)")
    p_run.add_argument("--threads", type=int, default=1, help="worker threads for field assembly")
    p_val = sub.add_parser("validate", help="check a job file without running it")
    p_val.add_argument("job")
    args = parser.parse_args(argv)

    try:
        doc = load_config(args.job)
    except ConfigError as exc:
        for msg in exc.messages:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.command == "validate":
            cfg = validate_config(doc)
            print(f"ok: {cfg.name} ({cfg.task})")
            return EXIT_OK
        csv_path, meta_path = run_job(doc, args.out, args.threads)
    except ConfigError as exc:
        for msg in exc.messages:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, ValueError, FloatingPointError) as exc:
        print(f"error: numerical precondition violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"wrote {csv_path} and {meta_path}")
    return EXIT_OK
