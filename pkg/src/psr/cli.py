"""Command-line front end: scenario execution, sweeps, deterministic output.

    psr <units|bloch-scan|profile|eigen|sweep> [--config FILE]
        [--scenario NAME] [--override K=V]... [--out DIR]

Scenarios come from built-in presets and/or ``[scenario.NAME]`` sections of a
config file with dotted keys; repeated --override flags are applied last
(last one wins).  Numeric CSV output uses the shortest round-trip decimal
representation, so identical scenarios reproduce byte-identical files.
Exit codes: 0 success, 1 configuration error, 2 solver/runtime error.
The PSR_THREADS environment variable caps sweep workers.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .bloch import bloch_components
from .eigenwell import (
    WellSpec,
    r3_ansatz,
    selfconsistent_iterate,
    solve_linear_bound_states,
)
from .master import static_residual
from .profile import (
    ConservedPair,
    FluxState,
    InsufficientDataError,
    ProfilePoint,
    SingularityError,
    detect_period,
    extract_solitons,
    integrate_profile,
    invariant_series,
)
from .scenarios import PRESETS, preset_names
from .units import (
    DimensionlessParams,
    InvalidSpecError,
    MediumSpec,
    derive_units,
    dimensionless_params,
    preset_para_h2,
)

__all__ = ["main", "run", "write_csv", "ConfigError"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2


class ConfigError(ValueError):
    """Configuration problem; the message names the offending key."""


# ---------------------------------------------------------------------------
# config handling
# ---------------------------------------------------------------------------

def load_config(path: str | Path) -> dict[str, dict[str, str]]:
    """Parse ``[scenario.NAME]`` sections into flat dotted-key dicts."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep key case
    read = parser.read(str(path))
    if not read:
        raise ConfigError(f"config file not found or unreadable: {path}")
    scenarios: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section.startswith("scenario."):
            name = section[len("scenario."):]
            scenarios[name] = dict(parser[section])
    return scenarios


def resolve_scenario(name: str | None, config: dict[str, dict[str, str]],
                     overrides: list[str]) -> dict[str, str]:
    """Layer preset <- config section <- overrides into one flat dict."""
    merged: dict[str, str] = {}
    if name is None:
        raise ConfigError("no scenario given (--scenario NAME)")
    found = False
    if name in PRESETS:
        merged.update(PRESETS[name])
        found = True
    if name in config:
        merged.update(config[name])
        found = True
    if not found:
        raise ConfigError(
            f"scenario {name!r} not found; presets: {', '.join(preset_names())}"
        )
    merged["name"] = name
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        matches = [k for k in merged if k == key or k.endswith("." + key)]
        if len(matches) > 1:
            raise ConfigError(f"override key {key!r} is ambiguous: {matches}")
        merged[matches[0] if matches else key] = value.strip()
    return merged


def _get_float(sc: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in sc:
        if default is not None:
            return default
        raise ConfigError(f"missing required key {key}")
    try:
        return float(sc[key])
    except ValueError as exc:
        raise ConfigError(f"key {key} is not a number: {sc[key]!r}") from exc


def _get_int(sc: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in sc:
        if default is not None:
            return default
        raise ConfigError(f"missing required key {key}")
    try:
        return int(sc[key])
    except ValueError as exc:
        raise ConfigError(f"key {key} is not an integer: {sc[key]!r}") from exc


def _params_from_scenario(sc: dict[str, str]) -> DimensionlessParams:
    gp = _get_float(sc, "params.gamma_plus")
    gm = _get_float(sc, "params.gamma_minus")
    tau1 = _get_float(sc, "params.tau1")
    tau2 = _get_float(sc, "params.tau2")
    if tau1 <= 0:
        raise ConfigError(f"tau1 must be > 0, got {tau1}")
    if tau2 <= 0:
        raise ConfigError(f"tau2 must be > 0, got {tau2}")
    return DimensionlessParams(gamma_plus=gp, gamma_minus=gm, tau1=tau1, tau2=tau2)


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    """Shortest decimal that round-trips the float exactly."""
    return repr(float(x))


def write_csv(path: str | Path, header: list[str], columns: list[np.ndarray]) -> Path:
    """Write columns as CSV: fixed header order, round-trip floats, LF newlines."""
    path = Path(path)
    if columns and any(len(c) != len(columns[0]) for c in columns):
        raise ValueError("CSV columns must share a length")
    n = len(columns[0]) if columns else 0

    def fmt_for(col):
        arr = np.asarray(col)
        if arr.dtype == object or arr.dtype.kind in "US":
            return str
        if np.issubdtype(arr.dtype, np.integer) or arr.dtype.kind == "b":
            return lambda v: str(int(v))
        return _fmt

    fmts = [fmt_for(c) for c in columns]
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(f(c[i]) for f, c in zip(fmts, columns)))
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    return path


def _write_manifest(out: Path, payload: dict) -> Path:
    path = out / "manifest.json"
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    encoding="ascii")
    return path


# ---------------------------------------------------------------------------
# mode runners
# ---------------------------------------------------------------------------

def _run_units(sc: dict[str, str], out: Path) -> dict:
    if "medium.alpha_ee" not in sc:
        raise ConfigError("units mode needs medium.* keys (missing medium.alpha_ee)")
    unit = sc.get("medium.relaxation_unit", "t0")
    if "medium.T1_s" in sc or "medium.T2_s" in sc:
        t1 = _get_float(sc, "medium.T1_s")
        t2 = _get_float(sc, "medium.T2_s")
        unit = "s"
    else:
        t1 = _get_float(sc, "medium.tau1", 1000.0)
        t2 = _get_float(sc, "medium.tau2", 10.0)
    try:
        spec = MediumSpec(
            alpha_ee=_get_float(sc, "medium.alpha_ee"),
            alpha_gg=_get_float(sc, "medium.alpha_gg"),
            alpha_ge=_get_float(sc, "medium.alpha_ge"),
            epsilon_eg=_get_float(sc, "medium.epsilon_eg"),
            n=_get_float(sc, "medium.n"),
            T1=t1,
            T2=t2,
            relaxation_unit=unit,
        )
    except InvalidSpecError as exc:
        raise ConfigError(str(exc)) from exc
    units = derive_units(spec)
    params = dimensionless_params(spec)
    return {
        "derived_units": {
            "t0_s": units.t0,
            "l0_m": units.l0,
            "ct0_mm": units.ct0_mm,
            "E0_sq_W_mm2": units.E0_sq_W_mm2,
            "E0_sq_TW_mm2": units.E0_sq_W_mm2 / 1e12,
        },
        "dimensionless": {
            "gamma_plus": params.gamma_plus,
            "gamma_minus": params.gamma_minus,
            "tau1": params.tau1,
            "tau2": params.tau2,
        },
    }


def _run_profile(sc: dict[str, str], out: Path) -> dict:
    params = _params_from_scenario(sc)
    hl = ConservedPair(h=_get_float(sc, "invariants.h"), l=_get_float(sc, "invariants.l"))
    r0 = _get_float(sc, "boundary.R0")
    l0 = _get_float(sc, "boundary.L0")
    formulation = sc.get("formulation", "reduced")
    if formulation not in ("reduced", "four_component"):
        raise ConfigError(f"formulation must be reduced|four_component, got {formulation!r}")
    span = (_get_float(sc, "span.min", 0.0), _get_float(sc, "span.max"))
    tol = _get_float(sc, "tol", 1e-9)
    if tol <= 0:
        raise ConfigError(f"tol must be > 0, got {tol}")
    n_points = _get_int(sc, "n_points", 2001)
    center = _get_float(sc, "center", span[0])
    initial = ProfilePoint(xi=center, state=FluxState(R=r0, L=l0, dR=0.0, dL=0.0))
    grid = integrate_profile(initial, span, params, formulation=formulation,
                             tol=tol, hl=hl, n_points=n_points)

    h_pt, l_pt = invariant_series(grid)
    csv = write_csv(
        out / "profile.csv",
        ["xi", "R", "L", "r1", "r2", "r3", "deta", "W_invariant_h", "invariant_l"],
        [grid.xi, grid.R, grid.L, grid.r1, grid.r2, grid.r3, grid.deta, h_pt, l_pt],
    )
    segments = extract_solitons(grid)
    seg_csv = write_csv(
        out / "segments.csv",
        ["xi_start", "xi_end", "type", "eta"],
        [np.array([s.xi_start for s in segments]),
         np.array([s.xi_end for s in segments]),
         np.array([s.type_tag for s in segments], dtype=object),
         np.array([s.eta for s in segments])],
    )
    diag = dict(grid.diagnostics)
    diag["flagged"] = grid.flagged
    try:
        period = detect_period(grid)
        diag["period"] = period.period
        diag["period_cv"] = period.cv
    except InsufficientDataError:
        diag["period"] = None
    diag["segments"] = [s.type_tag for s in segments]
    diag["eta_total"] = float(np.trapezoid(grid.deta, grid.xi))
    diag["max_deta"] = float(np.max(grid.deta))
    residual = static_residual(grid, params)
    diag["static_residual"] = {k: residual[k] for k in
                               ("rms_residual", "max_residual", "grid_points", "stencil_order")}
    return {"diagnostics": diag, "outputs": [csv.name, seg_csv.name]}


def _run_eigen(sc: dict[str, str], out: Path) -> dict:
    params = _params_from_scenario(sc)
    well = WellSpec(
        Delta=_get_float(sc, "well.Delta"),
        d=_get_float(sc, "well.d"),
        params=params,
    )
    max_levels = _get_int(sc, "eigen.max_levels", 6)
    pot = r3_ansatz(well)
    levels = solve_linear_bound_states(pot, params, max_levels=max_levels)
    outputs = []
    lev_csv = write_csv(
        out / "levels.csv",
        ["k", "h_sq", "nodes", "converged"],
        [np.array([r.k for r in levels]),
         np.array([r.h_sq for r in levels]),
         np.array([r.nodes for r in levels]),
         np.array([int(r.converged) for r in levels])],
    )
    outputs.append(lev_csv.name)
    for r in levels:
        w = pot.W(r.h_sq)
        path = write_csv(
            out / f"level_{r.k}.csv",
            ["xi", "psi_R", "psi_L", "r3", "W"],
            [r.xi, r.psi_R, r.psi_L, pot.r3, w],
        )
        outputs.append(path.name)

    scf = selfconsistent_iterate(
        well,
        hl=ConservedPair(h=0.0, l=_get_float(sc, "eigen.l", 0.0)),
        max_iter=_get_int(sc, "eigen.max_iter", 50),
        damping=_get_float(sc, "eigen.damping", 0.5),
        tol=_get_float(sc, "eigen.tol", 1e-6),
        level=_get_int(sc, "eigen.level", 1),
        I_peak=_get_float(sc, "well.I_peak", 0.01),
    )
    w = 2.0 * scf.h_sq - (params.gamma_plus + params.gamma_minus * scf.r3)
    path = write_csv(
        out / f"scf_level_{scf.k}.csv",
        ["xi", "psi_R", "psi_L", "r3", "W"],
        [scf.xi, scf.psi_R, scf.psi_L, scf.r3, w],
    )
    outputs.append(path.name)
    diag = {
        "levels": [{"k": r.k, "h_sq": r.h_sq, "nodes": r.nodes} for r in levels],
        "scf": {
            "converged": scf.converged,
            "iterations": len(scf.iterations),
            "h_sq": scf.h_sq,
            "history": scf.iterations,
        },
    }
    return {"diagnostics": diag, "outputs": outputs,
            "solver_failed": not scf.converged}


def _run_bloch_scan(sc: dict[str, str], out: Path) -> dict:
    params = _params_from_scenario(sc)
    e_min = _get_float(sc, "scan.e_min", 0.0)
    e_max = _get_float(sc, "scan.e_max", 2.0)
    steps = _get_int(sc, "scan.steps", 41)
    if steps < 1:
        raise ConfigError(f"scan.steps must be >= 1, got {steps}")
    e_vals = np.linspace(e_min, e_max, steps)
    eR, eL = [a.ravel() for a in np.meshgrid(e_vals, e_vals, indexing="ij")]
    r1, r2, r3, _ = bloch_components(eR.astype(complex), eL.astype(complex), params)
    deta = (r1 ** 2 + r2 ** 2) * (eR ** 2 + eL ** 2)
    csv = write_csv(out / "bloch_scan.csv",
                    ["eR", "eL", "r1", "r2", "r3", "deta"],
                    [eR, eL, r1, r2, r3, deta])
    return {"diagnostics": {"max_deta": float(np.max(deta))}, "outputs": [csv.name]}


def _run_one(sc: dict[str, str], out: Path) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    mode = sc.get("mode")
    if mode == "units":
        return _run_units(sc, out)
    if mode == "profile":
        return _run_profile(sc, out)
    if mode == "eigen":
        return _run_eigen(sc, out)
    if mode == "bloch-scan":
        return _run_bloch_scan(sc, out)
    raise ConfigError(f"unknown or missing mode {mode!r}")


def _sweep_values(sc: dict[str, str]) -> list[float]:
    if "sweep.values" in sc:
        try:
            return [float(v) for v in sc["sweep.values"].split(",")]
        except ValueError as exc:
            raise ConfigError("sweep.values must be comma-separated numbers") from exc
    lo = _get_float(sc, "sweep.min")
    hi = _get_float(sc, "sweep.max")
    steps = _get_int(sc, "sweep.steps")
    if steps < 1:
        raise ConfigError(f"sweep.steps must be >= 1, got {steps}")
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _run_sweep(sc: dict[str, str], out: Path) -> dict:
    param = sc.get("sweep.parameter")
    if not param:
        raise ConfigError("sweep mode needs sweep.parameter")
    base_keys = [k for k in sc if k == param or k.endswith("." + param)]
    if len(base_keys) > 1:
        raise ConfigError(f"sweep.parameter {param!r} is ambiguous: {base_keys}")
    key = base_keys[0] if base_keys else param
    values = _sweep_values(sc)
    cap = _get_int(sc, "sweep.max_cells", 1000)
    if len(values) > cap:
        raise ConfigError(f"sweep has {len(values)} cells, above cap {cap}")
    workers = int(os.environ.get("PSR_THREADS", "0")) or min(4, os.cpu_count() or 1)

    def run_cell(idx_value):
        idx, value = idx_value
        cell = {k: v for k, v in sc.items() if not k.startswith("sweep.")}
        cell[key] = _fmt(value)
        cell_out = out / f"cell_{idx:04d}"
        try:
            result = _run_one(cell, cell_out)
            _write_manifest(cell_out, {
                "tool_version": __version__,
                "scenario": cell,
                **result,
            })
            return idx, value, result, None
        except (ConfigError, SingularityError, InvalidSpecError, ValueError) as exc:
            cell_out.mkdir(parents=True, exist_ok=True)
            _write_manifest(cell_out, {
                "tool_version": __version__,
                "scenario": cell,
                "error": str(exc),
            })
            return idx, value, None, str(exc)

    out.mkdir(parents=True, exist_ok=True)
    jobs = list(enumerate(values))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(run_cell, jobs))
    else:
        cells = [run_cell(j) for j in jobs]
    cells.sort(key=lambda c: c[0])

    rows_idx, rows_val, rows_status = [], [], []
    rows_metric = {}
    failures = 0
    for idx, value, result, err in cells:
        rows_idx.append(idx)
        rows_val.append(value)
        rows_status.append("ok" if err is None else "error")
        if err is not None:
            failures += 1
            continue
        diag = result.get("diagnostics", {})
        for metric in ("eta_total", "max_deta", "period", "period_cv"):
            if metric in diag and diag[metric] is not None:
                rows_metric.setdefault(metric, {})[idx] = diag[metric]
        if "levels" in diag:
            rows_metric.setdefault("bound_count", {})[idx] = len(diag["levels"])
    header = ["cell", param, "status"]
    columns = [np.array(rows_idx), np.array(rows_val),
               np.array(rows_status, dtype=object)]
    for metric, by_idx in sorted(rows_metric.items()):
        header.append(metric)
        columns.append(np.array([by_idx.get(i, float("nan")) for i in rows_idx]))
    csv = write_csv(out / "summary.csv", header, columns)
    if failures == len(values):
        raise SingularityError(None, "all sweep cells failed")
    return {
        "diagnostics": {"cells": len(values), "failures": failures,
                        "workers": workers},
        "outputs": [csv.name],
    }


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def run(command: str, config_path: str | None, scenario: str | None,
        overrides: list[str], out_dir: str) -> int:
    """Execute one CLI command; returns the process exit code."""
    t_start = time.perf_counter()
    try:
        config = load_config(config_path) if config_path else {}
        sc = resolve_scenario(scenario, config, overrides)
        if command != "sweep":
            expected = {"units": "units", "profile": "profile",
                        "eigen": "eigen", "bloch-scan": "bloch-scan"}[command]
            if sc.get("mode") != expected:
                raise ConfigError(
                    f"scenario {sc['name']!r} has mode {sc.get('mode')!r}, "
                    f"but command {command!r} expects {expected!r}"
                )
        out = Path(out_dir) / sc["name"]
        if command == "sweep":
            result = _run_sweep(sc, out)
        else:
            result = _run_one(sc, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvalidSpecError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularityError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except InsufficientDataError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    manifest = {
        "tool_version": __version__,
        "scenario": sc,
        "wall_time_s": time.perf_counter() - t_start,
        **{k: v for k, v in result.items() if k != "solver_failed"},
    }
    _write_manifest(out, manifest)
    if result.get("solver_failed"):
        print("solver error: run flagged as not converged", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psr",
        description="Static soliton and soliton-condensate profiles of "
                    "two-photon paired-superradiance fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("units", "bloch-scan", "profile", "eigen", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="config file with [scenario.*] sections")
        p.add_argument("--scenario", default=None, help="scenario name (preset or config section)")
        p.add_argument("--override", action="append", default=[], metavar="K=V",
                       help="override a scenario key; repeatable, last wins")
        p.add_argument("--out", default="psr_out", help="output directory")
        if name == "units":
            p.add_argument("--preset", default=None, help="medium preset name (para-h2)")
            p.add_argument("--n", default=None, help="number density in cm^-3")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    scenario = args.scenario
    overrides = list(args.override)
    if args.command == "units":
        if getattr(args, "preset", None):
            scenario = args.preset
        if getattr(args, "n", None) is not None:
            overrides.append(f"medium.n={args.n}")
        if scenario is None:
            scenario = "para-h2"
    return run(args.command, args.config, scenario, overrides, args.out)


if __name__ == "__main__":
    sys.exit(main())
