# Command-line front end: key-value config ingestion, subcommand dispatch, and
# CSV / JSON-manifest / SVG emission.
#
# Conventions:
# - Config files are "key = value" lines; '#' starts a comment; flags mirror
#   key names and override file values.
# - All numbers are serialized in shortest round-trip decimal form, so a run
#   with a fixed config reproduces its data files byte for byte.  The JSON
#   manifest additionally records the wall clock and is deterministic except
#   for that one field.
# - Exit codes: 0 success, 1 configuration/validation error, 2 numerical
#   failure.  Errors are emitted as a JSON record on stderr.
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .degenerate import (
    aperiodic_solution,
    aperiodic_u_of_x,
    aperiodic_x_of_time,
    detect,
    e3e4_solution,
    e3e4_u_of_time,
    lagrange_limit_time,
    precession_rates,
)
from .dynamics import (
    TopParams,
    TopState,
    first_integrals,
    simulate,
    state_from_omega,
    u_dot_of_state,
    u_of_state,
)
from .elliptic import DegenerateLatticeError, LatticePoleError
from .quadrature import QuadratureError
from .reduction import (
    BranchPoints,
    DegenerateRootsError,
    InfeasibleConstantsError,
    ReducedConstants,
    branch_points,
    constants_from_roots,
    leg_time,
    nutation_half_period,
    reduced_rhs,
    turning_point_state,
    w_at_pm1,
)
from .su2 import GroupMembershipError, SpecialUnitary, Su2Vector
from .tip_curve import (
    TipSample,
    classify,
    count_self_intersections,
    trace_curve,
)

__all__ = ["main", "RunConfig", "ConfigError", "parse_config", "emit_tip_svg", "run"]

ENV_OUT_DIR = "TOYTOP_OUT_DIR"

NUMERICAL_ERRORS = (
    QuadratureError,
    InfeasibleConstantsError,
    DegenerateRootsError,
    DegenerateLatticeError,
    LatticePoleError,
    GroupMembershipError,
    FloatingPointError,
    ZeroDivisionError,
    ArithmeticError,
    RuntimeError,
    ValueError,
)


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


# Known configuration keys and their converters.  Sweep variants are the same
# names prefixed with "sweep_" and hold comma-separated lists.
_FLOAT_KEYS = (
    "A",
    "C",
    "s",
    "p",
    "alpha_re",
    "alpha_im",
    "beta_re",
    "beta_im",
    "omega1",
    "omega2",
    "omega3",
    "m1",
    "m2",
    "m3",
    "e1",
    "e2",
    "e3",
    "dt",
    "t_end",
    "lagrange_e4",
)
_INT_KEYS = ("branch", "n_periods", "samples_per_leg", "seed")
_STR_KEYS = ("label", "command")
KEY_TYPES: dict[str, type] = {
    **{k: float for k in _FLOAT_KEYS},
    **{k: int for k in _INT_KEYS},
    **{k: str for k in _STR_KEYS},
}
_SWEEPABLE = set(_FLOAT_KEYS) | set(_INT_KEYS)

_OMEGA_KEYS = ("omega1", "omega2", "omega3")
_MOMENTUM_KEYS = ("m1", "m2", "m3")
_ROOT_KEYS = ("e1", "e2", "e3")
_ATTITUDE_KEYS = ("alpha_re", "alpha_im", "beta_re", "beta_im")


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration: parameters, exactly one initial-condition
    form, integrator and sampler settings, and any sweep axes."""

    params: TopParams
    ic_kind: str  # omega | momentum | roots
    attitude: tuple[float, float, float, float] | None
    vector: tuple[float, float, float] | None  # omega or momentum components
    roots: tuple[float, float, float] | None
    branch: int
    dt: float
    t_end: float
    n_periods: int
    samples_per_leg: int
    seed: int
    label: str
    command: str
    lagrange_e4: float | None
    sweeps: dict[str, list[float]] = field(default_factory=dict)
    resolved: dict = field(default_factory=dict)


def parse_config(text: str) -> dict[str, object]:
    """Parse a key-value document into typed values.

    Unknown keys are rejected by name; malformed lines are reported with
    their line number.
    """
    values: dict[str, object] = {}
    unknown: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key.startswith("sweep_"):
            base = key[len("sweep_"):]
            if base not in _SWEEPABLE:
                unknown.append(key)
                continue
            try:
                values[key] = [KEY_TYPES[base](v.strip()) for v in val.split(",")]
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad sweep list for {key}: {exc}")
        elif key in KEY_TYPES:
            try:
                values[key] = KEY_TYPES[key](val)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad value for {key}: {exc}")
        else:
            unknown.append(key)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    return values


def build_config(values: dict[str, object]) -> RunConfig:
    """Validate a merged key-value mapping into a RunConfig."""
    missing = [k for k in ("A", "C", "s", "p") if k not in values]
    if missing:
        raise ConfigError(f"missing required parameter keys: {', '.join(missing)}")
    try:
        params = TopParams(
            float(values["A"]), float(values["C"]), float(values["s"]), float(values["p"])
        )
    except ValueError as exc:
        raise ConfigError(str(exc))

    has_omega = any(k in values for k in _OMEGA_KEYS)
    has_mom = any(k in values for k in _MOMENTUM_KEYS)
    has_roots = any(k in values for k in _ROOT_KEYS)
    has_att = any(k in values for k in _ATTITUDE_KEYS)
    forms = [
        name
        for name, present in (
            ("omega", has_omega),
            ("momentum", has_mom),
            ("roots", has_roots),
        )
        if present
    ]
    if len(forms) != 1:
        raise ConfigError(
            "exactly one initial-condition form is required "
            f"(attitude+omega, attitude+momentum, or roots); found: {forms or 'none'}"
        )
    ic_kind = forms[0]

    attitude = vector = roots = None
    if ic_kind == "roots":
        if has_att:
            raise ConfigError("attitude keys conflict with the roots form")
        for k in _ROOT_KEYS:
            if k not in values:
                raise ConfigError(f"roots form requires key {k}")
        roots = tuple(float(values[k]) for k in _ROOT_KEYS)
    else:
        group = _OMEGA_KEYS if ic_kind == "omega" else _MOMENTUM_KEYS
        for k in _ATTITUDE_KEYS + group:
            if k not in values:
                raise ConfigError(f"{ic_kind} form requires key {k}")
        attitude = tuple(float(values[k]) for k in _ATTITUDE_KEYS)
        vector = tuple(float(values[k]) for k in group)
        nrm = math.hypot(
            math.hypot(attitude[0], attitude[1]), math.hypot(attitude[2], attitude[3])
        )
        if abs(nrm - 1.0) > 0.1:
            raise ConfigError(
                f"|alpha|^2 + |beta|^2 = {nrm**2:.6f} is too far from 1"
            )

    branch = int(values.get("branch", 0))
    if not 0 <= branch <= 3:
        raise ConfigError(f"branch must be 0..3, got {branch}")
    dt = float(values.get("dt", 1e-3))
    t_end = float(values.get("t_end", 10.0))
    if dt <= 0.0:
        raise ConfigError(f"dt must be positive, got {dt}")
    if t_end <= 0.0:
        raise ConfigError(f"t_end must be positive, got {t_end}")
    n_periods = int(values.get("n_periods", 1))
    samples_per_leg = int(values.get("samples_per_leg", 200))
    if n_periods < 1 or samples_per_leg < 2:
        raise ConfigError("n_periods must be >= 1 and samples_per_leg >= 2")
    seed = int(values.get("seed", 0))
    label = str(values.get("label", "run"))
    command = str(values.get("command", "classify"))
    lagrange_e4 = (
        float(values["lagrange_e4"]) if "lagrange_e4" in values else None
    )
    sweeps = {
        k[len("sweep_"):]: list(v)
        for k, v in values.items()
        if k.startswith("sweep_")
    }
    resolved = {
        k: v for k, v in sorted(values.items())
    }
    resolved.setdefault("dt", dt)
    resolved.setdefault("t_end", t_end)
    resolved.setdefault("n_periods", n_periods)
    resolved.setdefault("samples_per_leg", samples_per_leg)
    resolved.setdefault("seed", seed)
    resolved.setdefault("label", label)
    return RunConfig(
        params,
        ic_kind,
        attitude,
        vector,
        roots,
        branch,
        dt,
        t_end,
        n_periods,
        samples_per_leg,
        seed,
        label,
        command,
        lagrange_e4,
        sweeps,
        resolved,
    )


# ---------------------------------------------------------------------------
# Derived objects from a config.


def _initial_state(cfg: RunConfig) -> TopState:
    if cfg.ic_kind == "roots":
        bp, consts = _reduction_objects(cfg)
        return turning_point_state(bp, consts)
    a = complex(cfg.attitude[0], cfg.attitude[1])
    b = complex(cfg.attitude[2], cfg.attitude[3])
    phi = SpecialUnitary.from_alpha_beta(a, b)
    vec = Su2Vector(*cfg.vector)
    if cfg.ic_kind == "omega":
        return state_from_omega(phi, vec, cfg.params)
    return TopState(phi, vec)


def _reduction_objects(cfg: RunConfig) -> tuple[BranchPoints, ReducedConstants]:
    if cfg.ic_kind == "roots":
        e1, e2, e3 = cfg.roots
        try:
            bp = BranchPoints(e1, e2, e3, cfg.params.e4)
        except ValueError as exc:
            raise ConfigError(str(exc))
        consts = constants_from_roots(bp, cfg.params, cfg.branch)
        return bp, consts
    state = _initial_state(cfg)
    fi = first_integrals(state, cfg.params)
    consts = ReducedConstants(fi.l, fi.n, fi.h, cfg.params)
    return branch_points(consts), consts


# ---------------------------------------------------------------------------
# Serialization helpers.


def _fmt(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


def _write_text(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows: list[list[float]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _write_text(path, "\n".join(lines) + "\n")


def read_csv(path: Path) -> tuple[list[str], list[list[float]]]:
    """Inverse of the CSV writer (exact float round-trip)."""
    lines = path.read_text(encoding="utf-8").strip().splitlines()
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, rows


def emit_tip_svg(samples: list[TipSample], metadata: dict | None = None) -> str:
    """Render the tip curve as one SVG polyline path.

    Equal-aspect viewbox fitted to the data with a 5% margin; the origin
    (the point under the top's center) is marked; optional metadata is
    embedded as JSON.
    """
    if not samples:
        raise ValueError("no samples to render")
    xs = [smp.c.real for smp in samples]
    ys = [-smp.c.imag for smp in samples]  # SVG's y axis points down
    cx = 0.5 * (min(xs) + max(xs))
    cy = 0.5 * (min(ys) + max(ys))
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    half = 0.55 * span  # 5% margin on each side
    view = f"{_fmt(cx - half)} {_fmt(cy - half)} {_fmt(2 * half)} {_fmt(2 * half)}"
    stroke = 2.0 * half / 400.0
    dot = 3.0 * stroke
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" '
        f'viewBox="{view}">'
    ]
    if metadata:
        parts.append(
            "<metadata>" + json.dumps(metadata, sort_keys=True) + "</metadata>"
        )
    parts.append(
        f'<circle cx="0" cy="0" r="{_fmt(dot)}" fill="black"/>'  # origin marker
    )
    if len(samples) == 1:
        parts.append(
            f'<circle cx="{_fmt(xs[0])}" cy="{_fmt(ys[0])}" r="{_fmt(2 * dot)}" '
            'fill="crimson"/>'
        )
    else:
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in zip(xs, ys))
        parts.append(
            f'<path d="{d}" fill="none" stroke="crimson" '
            f'stroke-width="{_fmt(stroke)}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Subcommand implementations.  Each returns the manifest dictionary; emitted
# file names are collected under "files".


def _base_manifest(cfg: RunConfig, command: str) -> dict:
    return {
        "command": command,
        "config": cfg.resolved,
        "version": __version__,
        "files": [],
    }


def cmd_simulate(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "simulate")
    state = _initial_state(cfg)
    states = simulate(state, cfg.dt, cfg.t_end, cfg.params)
    fi0 = first_integrals(states[0], cfg.params)
    rows = []
    drift = {"h": 0.0, "l": 0.0, "n": 0.0}
    for st in states:
        fi = first_integrals(st, cfg.params)
        rows.append(
            [
                st.t,
                u_of_state(st),
                st.phi.alpha.real,
                st.phi.alpha.imag,
                st.phi.beta.real,
                st.phi.beta.imag,
                st.m.x1,
                st.m.x2,
                st.m.x3,
                fi.h,
                fi.l,
                fi.n,
            ]
        )
        for name, v0, v in (("h", fi0.h, fi.h), ("l", fi0.l, fi.l), ("n", fi0.n, fi.n)):
            drift[name] = max(drift[name], abs(v - v0) / max(1.0, abs(v0)))
    path = outdir / f"{cfg.label}_trajectory.csv"
    _write_csv(
        path,
        ["t", "u", "alpha_re", "alpha_im", "beta_re", "beta_im", "m1", "m2", "m3", "h", "l", "n"],
        rows,
    )
    man["files"].append(path.name)
    man["drift"] = drift
    return man


def cmd_reduce(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "reduce")
    bp, consts = _reduction_objects(cfg)
    wp1, wm1 = w_at_pm1(bp, consts)
    red = {
        "l": consts.l,
        "n": consts.n,
        "h": consts.h,
        "e1": bp.e1,
        "e2": bp.e2,
        "e3": bp.e3,
        "e4": bp.e4,
        "w_plus": wp1,
        "w_minus": wm1,
    }
    try:
        red["half_period"] = nutation_half_period(bp, cfg.params)
    except DegenerateRootsError:
        red["half_period"] = None
    man["reduction"] = red
    return man


def cmd_classify(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "classify")
    bp, consts = _reduction_objects(cfg)
    cls = classify(bp, consts)
    wp1, wm1 = w_at_pm1(bp, consts)
    man["classification"] = {
        "kind": cls.kind,
        "threshold": cls.threshold,
        "e3": bp.e3,
        "w_plus": wp1,
        "w_minus": wm1,
    }
    return man


def cmd_tip_curve(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "tip-curve")
    bp, consts = _reduction_objects(cfg)
    cls = classify(bp, consts)
    samples = trace_curve(
        bp, consts, cfg.params, n_periods=cfg.n_periods, samples_per_leg=cfg.samples_per_leg
    )
    crossings = count_self_intersections(samples)
    csv_path = outdir / f"{cfg.label}_tip_curve.csv"
    _write_csv(
        csv_path,
        ["t", "u", "rho", "phi", "c_re", "c_im"],
        [[smp.t, smp.u, smp.rho, smp.phi, smp.c.real, smp.c.imag] for smp in samples],
    )
    metadata = {"kind": cls.kind}
    if crossings > 0:
        metadata["self_intersections"] = crossings
    svg_path = outdir / f"{cfg.label}_tip_curve.svg"
    _write_text(svg_path, emit_tip_svg(samples, metadata))
    man["files"] += [csv_path.name, svg_path.name]
    man["classification"] = {"kind": cls.kind, "threshold": cls.threshold}
    man["self_intersections"] = crossings
    return man


def cmd_period(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "period")
    bp, consts = _reduction_objects(cfg)
    half = nutation_half_period(bp, cfg.params)
    man["period"] = {"half": half, "full": 2.0 * half}
    return man


def cmd_degenerate(cfg: RunConfig, outdir: Path) -> dict:
    man = _base_manifest(cfg, "degenerate")
    bp, consts = _reduction_objects(cfg)
    kind = detect(bp, lagrange_e4=cfg.lagrange_e4)
    man["degeneracy"] = {"kind": kind.kind, "gap": kind.gap}

    if kind.kind == "stable_precession":
        prec, spin = precession_rates(bp.e1, consts)
        man["precession"] = {"u": bp.e1, "precession_rate": prec, "spin_rate": spin}
        return man

    if kind.kind == "e3_equals_e4":
        sol = e3e4_solution(bp, consts)
        period = 2.0 * nutation_half_period(bp, cfg.params)
        ode_states = simulate(
            turning_point_state(bp, consts, upper=True), cfg.dt, 2.0 * period, cfg.params
        )
        ts = np.linspace(0.0, 2.0 * period, 201)
        ode_t = np.array([st.t for st in ode_states])
        ode_u = np.array([u_of_state(st) for st in ode_states])
        rows, max_dev = [], 0.0
        for t in ts:
            u_cf, _ = e3e4_u_of_time(float(t), sol)
            u_ode = float(np.interp(t, ode_t, ode_u))
            rows.append([float(t), u_cf, u_ode])
            max_dev = max(max_dev, abs(u_cf - u_ode))
        path = outdir / f"{cfg.label}_e3e4_comparison.csv"
        _write_csv(path, ["t", "u_closed_form", "u_ode"], rows)
        man["files"].append(path.name)
        man["comparison"] = {"max_u_deviation": max_dev, "period": period}
        return man

    if kind.kind == "aperiodic":
        sol = aperiodic_solution(bp, consts)
        ode_states = simulate(
            turning_point_state(bp, consts), cfg.dt, cfg.t_end, cfg.params
        )
        ode_t = np.array([st.t for st in ode_states])
        ode_u = np.array([u_of_state(st) for st in ode_states])
        rows, max_dev = [], 0.0
        for t in np.linspace(0.0, cfg.t_end, 201):
            x = aperiodic_x_of_time(float(t), sol)
            u_cf = float(aperiodic_u_of_x(x, sol).real)
            u_ode = float(np.interp(t, ode_t, ode_u))
            rows.append([float(t), u_cf, u_ode])
            if u_ode < 1.0 - 1e-3:
                max_dev = max(max_dev, abs(u_cf - u_ode))
        path = outdir / f"{cfg.label}_aperiodic_comparison.csv"
        _write_csv(path, ["t", "u_closed_form", "u_ode"], rows)
        man["files"].append(path.name)
        man["comparison"] = {"max_u_deviation": max_dev}
        return man

    if kind.kind == "lagrange_limit":
        t_limit = lagrange_limit_time(
            bp.e1, bp.e2, bp.e1, bp.e2, bp.e3, cfg.params.A, cfg.params.p
        )
        t_exact = leg_time(bp, cfg.params, bp.e1, bp.e2)
        man["lagrange"] = {
            "half_period_limit": t_limit,
            "half_period_exact": t_exact,
            "relative_gap": abs(t_limit - t_exact) / t_exact,
        }
        return man

    man["note"] = "no degeneracy detected; nothing to compute"
    return man


def cmd_validate(cfg: RunConfig, outdir: Path) -> dict:
    """Cross-validate the configured motion: conservation drift, the reduced
    equation residual, and the root/constants round-trip."""
    man = _base_manifest(cfg, "validate")
    checks: dict[str, dict] = {}

    state = _initial_state(cfg)
    states = simulate(state, cfg.dt, min(cfg.t_end, 20.0), cfg.params)
    fi0 = first_integrals(states[0], cfg.params)
    drift = 0.0
    for st in states:
        fi = first_integrals(st, cfg.params)
        for v0, v in ((fi0.h, fi.h), (fi0.l, fi.l), (fi0.n, fi.n)):
            drift = max(drift, abs(v - v0) / max(1.0, abs(v0)))
    checks["conservation_drift"] = {"value": drift, "tolerance": 1e-8, "pass": drift < 1e-8}

    consts = ReducedConstants(fi0.l, fi0.n, fi0.h, cfg.params)
    e4sq = cfg.params.e4 ** 2
    s = cfg.params.s
    resid = 0.0
    for st in states[:: max(1, len(states) // 500)]:
        u = u_of_state(st)
        ud = u_dot_of_state(st, cfg.params)
        resid = max(
            resid, abs(ud * ud - (2.0 / s) * reduced_rhs(u, consts) / (e4sq - u * u))
        )
    checks["reduced_residual"] = {"value": resid, "tolerance": 1e-7, "pass": resid < 1e-7}

    bp = branch_points(consts)
    rt = 0.0
    for br in range(4):
        try:
            cand = constants_from_roots(bp, cfg.params, br)
        except ValueError:
            continue
        err = max(
            abs(cand.l - consts.l), abs(cand.n - consts.n), abs(cand.h - consts.h)
        )
        rt = err if rt == 0.0 else min(rt, err)
    checks["roots_round_trip"] = {"value": rt, "tolerance": 1e-10, "pass": rt < 1e-10}

    man["checks"] = checks
    man["pass"] = all(c["pass"] for c in checks.values())
    if not man["pass"]:
        failing = [k for k, c in checks.items() if not c["pass"]]
        raise QuadratureError(
            f"validation failed: {', '.join(failing)} (see {cfg.label}_manifest.json)"
        )
    return man


def cmd_sweep(cfg: RunConfig, outdir: Path) -> dict:
    """Run a cartesian grid of configs concurrently with isolated outputs."""
    man = _base_manifest(cfg, "sweep")
    if not cfg.sweeps:
        raise ConfigError("sweep requires at least one sweep_<key> entry")
    target = cfg.command
    if target not in _COMMANDS or target == "sweep":
        raise ConfigError(f"sweep target command must be one of {sorted(set(_COMMANDS) - {'sweep'})}")
    axes = sorted(cfg.sweeps.items())
    combos = list(product(*(vals for _, vals in axes)))
    base = {k: v for k, v in cfg.resolved.items() if not k.startswith("sweep_")}
    base.pop("command", None)

    def one(idx_combo):
        idx, combo = idx_combo
        values = dict(base)
        for (key, _), val in zip(axes, combo):
            values[key] = val
        values["label"] = f"{cfg.label}_{idx:03d}"
        sub_cfg = build_config(values)
        sub_dir = outdir / f"{cfg.label}_{idx:03d}"
        sub_dir.mkdir(parents=True, exist_ok=True)
        sub_man = _COMMANDS[target](sub_cfg, sub_dir)
        _write_manifest(sub_man, sub_cfg, sub_dir)
        return {
            "index": idx,
            "values": {key: val for (key, _), val in zip(axes, combo)},
            "dir": sub_dir.name,
            "classification": sub_man.get("classification"),
        }

    with ThreadPoolExecutor(max_workers=min(8, len(combos))) as pool:
        results = list(pool.map(one, enumerate(combos)))
    man["sweep"] = {
        "axes": {k: v for k, v in axes},
        "command": target,
        "runs": results,
    }
    return man


_COMMANDS = {
    "simulate": cmd_simulate,
    "reduce": cmd_reduce,
    "classify": cmd_classify,
    "tip-curve": cmd_tip_curve,
    "period": cmd_period,
    "degenerate": cmd_degenerate,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
}


def _write_manifest(man: dict, cfg: RunConfig, outdir: Path) -> Path:
    path = outdir / f"{cfg.label}_manifest.json"
    man["files"] = sorted(set(man["files"]))
    _write_text(path, json.dumps(man, indent=2, sort_keys=True, default=str) + "\n")
    return path


def run(command: str, cfg: RunConfig, outdir: Path) -> dict:
    """Dispatch one command; emit its files and manifest under outdir."""
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    man = _COMMANDS[command](cfg, outdir)
    man["wall_clock_s"] = time.perf_counter() - t0
    _write_manifest(man, cfg, outdir)
    return man


# ---------------------------------------------------------------------------
# Argument parsing.


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors to exit code 1
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="toytop",
        description=(
            "Integrable dynamics of a top whose axis point moves in a plane: "
            "simulation, reduction, tip-curve classification, periods, and "
            "elliptic closed forms."
        ),
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument(
        "config",
        nargs="?",
        default=None,
        help="path to a key = value configuration file",
    )
    parser.add_argument(
        "--out-dir",
        default=None,
        help=f"output directory (default: ${ENV_OUT_DIR} or the current directory)",
    )
    for key, typ in KEY_TYPES.items():
        parser.add_argument(
            f"--{key}", dest=f"key_{key}", type=typ, default=None, help=argparse.SUPPRESS
        )
    for key in sorted(_SWEEPABLE):
        parser.add_argument(
            f"--sweep_{key}",
            dest=f"key_sweep_{key}",
            type=str,
            default=None,
            help=argparse.SUPPRESS,
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    try:
        ns = _build_parser().parse_args(args)
        values: dict[str, object] = {}
        if ns.config is not None:
            path = Path(ns.config)
            if not path.exists():
                raise ConfigError(f"config file not found: {path}")
            values.update(parse_config(path.read_text(encoding="utf-8")))
        for key in KEY_TYPES:
            flag = getattr(ns, f"key_{key}", None)
            if flag is not None:
                values[key] = flag
        for key in _SWEEPABLE:
            flag = getattr(ns, f"key_sweep_{key}", None)
            if flag is not None:
                values[f"sweep_{key}"] = [KEY_TYPES[key](v) for v in flag.split(",")]
        cfg = build_config(values)
        outdir = Path(
            ns.out_dir
            if ns.out_dir is not None
            else os.environ.get(ENV_OUT_DIR, ".")
        )
        man = run(ns.command, cfg, outdir)
    except ConfigError as exc:
        print(
            json.dumps({"error": "ConfigError", "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except NUMERICAL_ERRORS as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    summary = {
        "command": man["command"],
        "manifest": f"{cfg.label}_manifest.json",
        "files": man["files"],
    }
    for key in ("classification", "drift", "period", "degeneracy", "pass", "self_intersections"):
        if key in man:
            summary[key] = man[key]
    print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
