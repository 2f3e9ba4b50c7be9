"""Command-line harness for the relay placement experiments.

Subcommands: ``solve`` (base scenario), ``sweep`` (configured parameter
sweep), ``profile`` (SNR curves along height or offset) and ``oracle``
(exhaustive reference search).  Exit codes: 0 success, 2 invalid
configuration or usage, 3 when some solver runs failed (partial output
is still written).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import replace

import click

from .atg3d import Atg3dScenario
from .config import ATG3D_SOLVERS, FREESPACE_SOLVERS, ConfigError, load_config
from .harness import (
    profile_curves,
    run_experiment,
    write_profile_csv,
    write_rows_csv,
    write_rows_json,
    write_traces_json,
)
from .oracle import GridSpec

EXIT_CONFIG_ERROR = 2
EXIT_PARTIAL_FAILURE = 3


def _fail_config(detail: str) -> None:
    click.echo(json.dumps({"error": "config", "detail": detail}), err=True)
    sys.exit(EXIT_CONFIG_ERROR)


def _load(config_path: str):
    try:
        return load_config(config_path)
    except ConfigError as exc:
        _fail_config(str(exc))


def _override_solvers(config, solver_option: str | None):
    if solver_option is None:
        return config
    names = tuple(s.strip() for s in solver_option.split(",") if s.strip())
    if not names:
        _fail_config("--solver override is empty")
    allowed = FREESPACE_SOLVERS if config.model == "freespace" else ATG3D_SOLVERS
    for name in names:
        if name not in allowed:
            _fail_config(
                f"solver {name!r} is not available for the {config.model} model "
                f"(choose from {list(allowed)})"
            )
    return replace(config, solvers=names)


def _parse_grid(config, grid_option: str | None):
    if grid_option is None:
        return config
    counts: dict[str, int] = {}
    for part in grid_option.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            _fail_config(f"bad --grid entry {part!r}; expected axis=points")
        axis, _, num = part.partition("=")
        if axis not in ("x", "p1", "h"):
            _fail_config(f"unknown --grid axis {axis!r}; expected x, p1 or h")
        try:
            counts[axis] = int(num)
        except ValueError:
            _fail_config(f"bad --grid point count {num!r}")
    try:
        grid = GridSpec.with_points(
            config.scenario, counts.get("x"), counts.get("p1"), counts.get("h")
        )
    except ValueError as exc:
        _fail_config(str(exc))
    return replace(config, grid=grid)


def _emit(config, outcome, out_option: str | None, trace_option: str | None) -> None:
    csv_path = out_option or config.output_csv or "results.csv"
    if out_option is None and config.output_json:
        json_path = config.output_json
    else:
        json_path = os.path.splitext(csv_path)[0] + ".json"
    write_rows_csv(outcome.rows, csv_path)
    write_rows_json(outcome.rows, json_path)
    trace_path = trace_option or config.output_trace
    if trace_path:
        write_traces_json(outcome.traces, trace_path)
    click.echo(f"wrote {csv_path} and {json_path} ({len(outcome.rows)} data rows)")
    if outcome.failures:
        click.echo(f"{outcome.failures} solver run(s) failed", err=True)
        sys.exit(EXIT_PARTIAL_FAILURE)


_CONFIG_OPT = click.option(
    "--config", "config_path", required=True, metavar="PATH",
    help="Experiment config file (JSON).",
)
_OUT_OPT = click.option(
    "--out", "out_path", default=None, metavar="PATH",
    help="CSV output path (a JSON mirror is written alongside).",
)
_TRACE_OPT = click.option(
    "--trace", "trace_path", default=None, metavar="PATH",
    help="Write per-run SNR traces to this JSON file.",
)
_SOLVER_OPT = click.option(
    "--solver", "solver_option", default=None, metavar="NAME[,NAME...]",
    help="Override the configured solver list.",
)


@click.group()
def main() -> None:
    """Relay placement and power-split optimisation experiments."""


@main.command()
@_CONFIG_OPT
@_OUT_OPT
@_TRACE_OPT
@_SOLVER_OPT
def solve(config_path, out_path, trace_path, solver_option) -> None:
    """Run the configured solvers on the base scenario (no sweep)."""
    config = _load(config_path)
    config = _override_solvers(config, solver_option)
    config = replace(config, sweep_parameter=None, sweep_values=())
    _emit(config, run_experiment(config), out_path, trace_path)


@main.command()
@_CONFIG_OPT
@_OUT_OPT
@_TRACE_OPT
@_SOLVER_OPT
def sweep(config_path, out_path, trace_path, solver_option) -> None:
    """Run the configured solvers over the configured sweep."""
    config = _load(config_path)
    if config.sweep_parameter is None:
        _fail_config("sweep subcommand requires a sweep section in the config")
    config = _override_solvers(config, solver_option)
    _emit(config, run_experiment(config), out_path, trace_path)


@main.command()
@_CONFIG_OPT
@_OUT_OPT
@click.option("--axis", type=click.Choice(["height", "x"]), default=None,
              help="Profile coordinate (default from config, else height).")
@click.option("--step", type=float, default=None, metavar="METRES",
              help="Sample spacing (default from config, else 1 m).")
def profile(config_path, out_path, axis, step) -> None:
    """Emit SNR profile curves for the air-to-ground model."""
    config = _load(config_path)
    try:
        coord_name, rows = profile_curves(config, axis, step)
    except ConfigError as exc:
        _fail_config(str(exc))
    csv_path = out_path or config.output_csv or "profile.csv"
    write_profile_csv(coord_name, rows, csv_path)
    click.echo(f"wrote {csv_path} ({len(rows)} samples)")


@main.command()
@_CONFIG_OPT
@_OUT_OPT
@_TRACE_OPT
@click.option("--grid", "grid_option", default=None, metavar="SPEC",
              help="Grid densities, e.g. 'x=2000,p1=2000' or 'x=200,h=200,p1=200'.")
def oracle(config_path, out_path, trace_path, grid_option) -> None:
    """Run the exhaustive reference search on the base scenario."""
    config = _load(config_path)
    config = _parse_grid(config, grid_option)
    config = replace(
        config, solvers=("exhaustive",), sweep_parameter=None, sweep_values=()
    )
    _emit(config, run_experiment(config), out_path, trace_path)


if __name__ == "__main__":
    main()
