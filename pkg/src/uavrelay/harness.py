"""Experiment runner: solver dispatch, sweeps, result rows and file output.

Rows are emitted in (solver, sweep index) order regardless of execution
details, numeric cells use the shortest round-trip float representation,
and the wall-time measurement is isolated in the last CSV column so two
runs of the same config can be diffed column-wise.  A failing solver
produces an error-status row and the run carries on.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, replace

from .atg3d import Atg3dScenario, _gamma, bcd_solve_3d
from .channels import ATG_PRESETS, AtgEnvironment, FreeSpaceScenario
from .config import ConfigError, ExperimentConfig, ProfileSpec
from .fbl import BlocklengthParams, PowerSplit
from .freespace import SolveResult, bcd_solve
from .highsnr import high_snr_solve
from .oracle import (
    exhaustive_search,
    fixed_height_baseline,
    fixed_location_baseline,
    fixed_power_baseline,
)

CSV_COLUMNS = (
    "scenario_id", "solver", "sweep_parameter", "sweep_value",
    "x_m", "height_m", "p1_w", "p2_w", "snr", "error_prob",
    "iterations", "status", "wall_time_s",
)


@dataclass(frozen=True)
class ResultRow:
    """One solver outcome; numeric fields are None on solver failure."""

    scenario_id: str
    solver: str
    sweep_parameter: str
    sweep_value: str
    x_m: float | None
    height_m: float | None
    p1_w: float | None
    p2_w: float | None
    snr: float | None
    error_prob: float | None
    iterations: int | None
    status: str
    wall_time_s: float

    def csv_fields(self) -> list[str]:
        def cell(v):
            return "" if v is None else str(v)

        return [cell(getattr(self, name)) for name in CSV_COLUMNS]

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in CSV_COLUMNS}


@dataclass(frozen=True)
class RunOutcome:
    rows: tuple[ResultRow, ...]
    traces: dict[str, list[float]]
    failures: int


def _materialize(config: ExperimentConfig, value):
    """Scenario and blocklength with one sweep value applied (None = base)."""
    scn, blk = config.scenario, config.blk
    param = config.sweep_parameter
    if value is None or param is None:
        return scn, blk
    if param == "total_blocklength":
        blk = BlocklengthParams(blk.packet_bits, int(value))
    elif param == "packet_bits":
        blk = BlocklengthParams(int(value), blk.total_blocklength)
    elif param == "power_budget_w":
        scn = replace(scn, p_total=float(value))
    elif param == "hop2_environment":
        env2 = AtgEnvironment.from_preset(
            value, scn.env2.carrier_hz, scn.env2.noise_power_db
        )
        scn = replace(scn, env2=env2)
    else:
        raise ConfigError(f"unknown sweep parameter {param!r}")
    if isinstance(scn, Atg3dScenario):
        scn = replace(scn, blk=blk)
    return scn, blk


def _dispatch(solver: str, scn, blk, config: ExperimentConfig) -> SolveResult:
    if isinstance(scn, Atg3dScenario):
        if solver == "bcd":
            return bcd_solve_3d(scn)
        if solver == "exhaustive":
            return exhaustive_search(scn, blk, config.grid)
        if solver == "fixed-location":
            return fixed_location_baseline(scn, blk)
        if solver == "fixed-power":
            return fixed_power_baseline(scn, blk)
        if solver == "fixed-height":
            return fixed_height_baseline(scn, blk, config.fixed_height_m)
    else:
        if solver == "bcd":
            return bcd_solve(scn, blk)
        if solver == "high-snr":
            return high_snr_solve(scn, blk)
        if solver == "exhaustive":
            return exhaustive_search(scn, blk, config.grid)
        if solver == "fixed-location":
            return fixed_location_baseline(scn, blk)
        if solver == "fixed-power":
            return fixed_power_baseline(scn, blk)
    raise ConfigError(f"unknown solver {solver!r}")


def run_experiment(config: ExperimentConfig) -> RunOutcome:
    """Run every configured solver over the sweep (or the base point)."""
    points = list(config.sweep_values) if config.sweep_parameter else [None]
    rows: list[ResultRow] = []
    traces: dict[str, list[float]] = {}
    failures = 0
    for solver in config.solvers:
        for value in points:
            sweep_value = "" if value is None else str(value)
            key = f"{config.scenario_id}/{solver}/{sweep_value or 'base'}"
            start = time.perf_counter()
            try:
                scn, blk = _materialize(config, value)
                result = _dispatch(solver, scn, blk, config)
            except Exception as exc:  # carry on; the row records the failure
                failures += 1
                rows.append(ResultRow(
                    config.scenario_id, solver, config.sweep_parameter or "",
                    sweep_value, None, None, None, None, None, None, None,
                    f"error: {exc}", time.perf_counter() - start,
                ))
                continue
            wall = time.perf_counter() - start
            rows.append(ResultRow(
                config.scenario_id, solver, config.sweep_parameter or "",
                sweep_value, result.x, result.height, result.powers.p1,
                result.powers.p2, result.snr, result.error_prob,
                result.iterations, "ok", wall,
            ))
            traces[key] = list(result.trace)
    return RunOutcome(tuple(rows), traces, failures)


def write_rows_csv(rows, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_fields())


def write_rows_json(rows, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([row.as_dict() for row in rows], fh, indent=2)
        fh.write("\n")


def write_traces_json(traces: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(traces, fh, indent=2)
        fh.write("\n")


def profile_curves(
    config: ExperimentConfig, axis: str | None = None, step: float | None = None
) -> tuple[str, list[tuple[str, float, float]]]:
    """SNR profile curves along height or ground offset, one per hop-2 preset.

    Returns the coordinate column name and (environment, coordinate, snr)
    rows.  The companion coordinate stays fixed (explicitly configured or
    the band midpoint) and powers default to an even split.
    """
    scn = config.scenario
    if not isinstance(scn, Atg3dScenario):
        raise ConfigError("profile curves apply to the atg3d model only")
    prof = config.profile or ProfileSpec()
    axis = axis or prof.axis
    step = step if step is not None else prof.step_m
    if axis not in ("height", "x"):
        raise ConfigError(f"unknown profile axis {axis!r}; expected 'height' or 'x'")
    if step <= 0.0:
        raise ConfigError(f"profile step must be positive, got {step}")

    if prof.p1_w is None:
        powers = PowerSplit.even(scn.p_total)
    else:
        powers = PowerSplit(prof.p1_w, scn.p_total - prof.p1_w)

    if axis == "height":
        bounds = (scn.h_min, scn.h_max)
        fixed = prof.fixed_x_m if prof.fixed_x_m is not None else 0.5 * (scn.d1 + scn.d2)
        fixed_bounds = (scn.d1, scn.d2)
        coord_name = "height_m"
    else:
        bounds = (scn.d1, scn.d2)
        fixed = prof.fixed_height_m if prof.fixed_height_m is not None \
            else 0.5 * (scn.h_min + scn.h_max)
        fixed_bounds = (scn.h_min, scn.h_max)
        coord_name = "x_m"
    if not (fixed_bounds[0] <= fixed <= fixed_bounds[1]):
        raise ConfigError(
            f"fixed profile coordinate {fixed} outside bounds {fixed_bounds}"
        )
    lo, hi = prof.sample_range if prof.sample_range is not None else bounds
    if not (bounds[0] <= lo <= hi <= bounds[1]):
        raise ConfigError(f"profile range ({lo}, {hi}) outside bounds {bounds}")

    coords = [lo]
    while coords[-1] + step <= hi + 1e-9 * step:
        coords.append(coords[-1] + step)

    rows: list[tuple[str, float, float]] = []
    for preset in prof.hop2_presets:
        env2 = AtgEnvironment.from_preset(
            preset, scn.env2.carrier_hz, scn.env2.noise_power_db
        )
        swept = replace(scn, env2=env2)
        for coord in coords:
            if axis == "height":
                gamma = _gamma(swept, fixed, coord, powers)
            else:
                gamma = _gamma(swept, coord, fixed, powers)
            rows.append((preset, coord, gamma))
    return coord_name, rows


def write_profile_csv(coord_name: str, rows, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("environment", coord_name, "snr"))
        for env_name, coord, snr in rows:
            writer.writerow((env_name, str(coord), str(snr)))
