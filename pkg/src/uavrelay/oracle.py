"""Brute-force reference search and the simple baseline schemes.

The exhaustive search evaluates the exact end-to-end SNR on a dense
grid (vectorised with numpy) and polishes the best cell with one local
golden-section refinement per axis.  It exists to check the analytic
solvers, so it deliberately avoids their closed forms.  The baselines
pin one decision variable (placement or power split) and optimise the
rest, mirroring the usual comparison schemes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atg3d import Atg3dScenario, _gamma, hop_gains_3d, optimize_height, optimize_x
from .channels import FreeSpaceScenario
from .fbl import BlocklengthParams, PowerSplit, decoding_error_probability
from .freespace import (
    BCD_MAX_ITERS,
    BCD_REL_TOL,
    SolveResult,
    optimal_location_given_power,
    optimal_power_for_gains,
    optimal_power_given_x,
    snr_at,
)
from .search import golden_section_max

# Default grid density per axis: dense for the two-variable model, coarser
# for the three-variable one.
DEFAULT_POINTS_2D = 2000
DEFAULT_POINTS_3D = 200

# Default pinned flying height of the fixed-height baseline, in metres.
DEFAULT_FIXED_HEIGHT = 100.0


@dataclass(frozen=True)
class GridSpec:
    """Axis ranges and step sizes for the exhaustive search.

    Unset ranges default to the scenario bounds (the full power budget
    for p1); unset steps spread the default point count over the range.
    Ranges must stay inside the scenario bounds.
    """

    x_range: tuple[float, float] | None = None
    x_step: float | None = None
    p1_range: tuple[float, float] | None = None
    p1_step: float | None = None
    h_range: tuple[float, float] | None = None
    h_step: float | None = None

    def __post_init__(self):
        for name, step in (("x_step", self.x_step), ("p1_step", self.p1_step),
                           ("h_step", self.h_step)):
            if step is not None and not (step > 0.0 and math.isfinite(step)):
                raise ValueError(f"{name} must be positive and finite, got {step}")
        for name, rng in (("x_range", self.x_range), ("p1_range", self.p1_range),
                          ("h_range", self.h_range)):
            if rng is not None and rng[0] > rng[1]:
                raise ValueError(f"{name} is empty: {rng}")

    @classmethod
    def with_points(
        cls,
        scn: "FreeSpaceScenario | Atg3dScenario",
        x: int | None = None,
        p1: int | None = None,
        h: int | None = None,
    ) -> "GridSpec":
        """Spec from per-axis point counts over the full scenario ranges."""

        def step_for(n, bounds):
            if n is None:
                return None
            if n < 2:
                raise ValueError(f"need at least 2 points per axis, got {n}")
            return (bounds[1] - bounds[0]) / (n - 1)

        if h is not None and not isinstance(scn, Atg3dScenario):
            raise ValueError("height axis only applies to the air-to-ground model")
        return cls(
            x_step=step_for(x, (scn.d1, scn.d2)),
            p1_step=step_for(p1, (0.0, scn.p_total)),
            h_step=None if h is None else step_for(h, (scn.h_min, scn.h_max)),
        )


def _axis(rng, step, bounds, default_points) -> np.ndarray:
    lo, hi = bounds if rng is None else rng
    if lo < bounds[0] or hi > bounds[1]:
        raise ValueError(f"grid range ({lo}, {hi}) outside scenario bounds {bounds}")
    if hi == lo:
        return np.array([lo])
    if step is None:
        n = default_points
    else:
        n = max(2, int(round((hi - lo) / step)) + 1)
    return np.linspace(lo, hi, n)


def _resolve_blk(scn, blk: BlocklengthParams | None) -> BlocklengthParams:
    if blk is not None:
        return blk
    if isinstance(scn, Atg3dScenario):
        return scn.blk
    raise ValueError("blocklength parameters are required for this scenario type")


def _refine_axis(f, center: float, step: float, lo: float, hi: float,
                 best: tuple[float, float]) -> tuple[float, float]:
    # one golden-section polish inside +/- one grid step around the best cell
    a = max(lo, center - step)
    b = min(hi, center + step)
    if b <= a:
        return best
    x, v = golden_section_max(f, a, b, tol=max(step * 1e-6, 1e-12))
    if v > best[1]:
        return x, v
    return best


def exhaustive_search(
    scn: FreeSpaceScenario | Atg3dScenario,
    blk: BlocklengthParams | None = None,
    grid: GridSpec | None = None,
) -> SolveResult:
    """Dense grid search over the decision variables, locally refined.

    Grid ties are broken towards the lexicographically smallest index
    (x-major order), which makes the result deterministic.
    """
    blk = _resolve_blk(scn, blk)
    if grid is None:
        grid = GridSpec()
    if isinstance(scn, Atg3dScenario):
        return _exhaustive_3d(scn, blk, grid)
    return _exhaustive_2d(scn, blk, grid)


def _exhaustive_2d(
    scn: FreeSpaceScenario, blk: BlocklengthParams, grid: GridSpec
) -> SolveResult:
    xs = _axis(grid.x_range, grid.x_step, (scn.d1, scn.d2), DEFAULT_POINTS_2D)
    ps = _axis(grid.p1_range, grid.p1_step, (0.0, scn.p_total), DEFAULT_POINTS_2D)

    h_sq = scn.H * scn.H
    g1 = scn.beta1 / (h_sq + xs * xs)
    g2 = scn.beta2 / (h_sq + (scn.D - xs) * (scn.D - xs))
    p2 = scn.p_total - ps
    num = np.outer(g1 * g2, ps * p2)
    den = np.outer(g2, p2) + np.outer(g1, ps) + 1.0
    gam = num / den

    ix, ip = np.unravel_index(int(np.argmax(gam)), gam.shape)
    x_best, p_best, v_best = float(xs[ix]), float(ps[ip]), float(gam[ix, ip])

    x_lo, x_hi = (scn.d1, scn.d2) if grid.x_range is None else grid.x_range
    p_lo, p_hi = (0.0, scn.p_total) if grid.p1_range is None else grid.p1_range
    if len(xs) > 1:
        step = float(xs[1] - xs[0])
        f = lambda x: snr_at(scn, x, PowerSplit(p_best, scn.p_total - p_best))
        x_best, v_best = _refine_axis(f, x_best, step, x_lo, x_hi, (x_best, v_best))
    if len(ps) > 1:
        step = float(ps[1] - ps[0])
        f = lambda p: snr_at(scn, x_best, PowerSplit(p, scn.p_total - p))
        p_best, v_best = _refine_axis(f, p_best, step, p_lo, p_hi, (p_best, v_best))

    powers = PowerSplit(p_best, scn.p_total - p_best)
    gamma = snr_at(scn, x_best, powers)
    eps = decoding_error_probability(gamma, blk)
    return SolveResult("exhaustive", x_best, scn.H, powers, gamma, eps, 1, (gamma,))


def _exhaustive_3d(
    scn: Atg3dScenario, blk: BlocklengthParams, grid: GridSpec
) -> SolveResult:
    xs = _axis(grid.x_range, grid.x_step, (scn.d1, scn.d2), DEFAULT_POINTS_3D)
    hs = _axis(grid.h_range, grid.h_step, (scn.h_min, scn.h_max), DEFAULT_POINTS_3D)
    ps = _axis(grid.p1_range, grid.p1_step, (0.0, scn.p_total), DEFAULT_POINTS_3D)

    xg, hg = np.meshgrid(xs, hs, indexing="ij")
    theta1 = np.degrees(np.arctan2(hg, xg))
    theta2 = np.degrees(np.arctan2(hg, scn.D - xg))
    r1_sq = xg * xg + hg * hg
    r2_sq = (scn.D - xg) * (scn.D - xg) + hg * hg

    def env_gain(env, theta, r_sq):
        s = 1.0 / (1.0 + env.s_curve_a * np.exp(-env.s_curve_b * (theta - env.s_curve_a)))
        return env.gain_scale / r_sq * 10.0 ** (env.gain_exponent * s)

    g1 = env_gain(scn.env1, theta1, r1_sq)[:, :, None]
    g2 = env_gain(scn.env2, theta2, r2_sq)[:, :, None]
    p1 = ps[None, None, :]
    p2 = scn.p_total - p1
    gam = (g1 * g2 * p1 * p2) / (g2 * p2 + g1 * p1 + 1.0)

    ix, ih, ip = np.unravel_index(int(np.argmax(gam)), gam.shape)
    x_best, h_best, p_best = float(xs[ix]), float(hs[ih]), float(ps[ip])
    v_best = float(gam[ix, ih, ip])

    x_lo, x_hi = (scn.d1, scn.d2) if grid.x_range is None else grid.x_range
    h_lo, h_hi = (scn.h_min, scn.h_max) if grid.h_range is None else grid.h_range
    p_lo, p_hi = (0.0, scn.p_total) if grid.p1_range is None else grid.p1_range

    def powers_at(p):
        return PowerSplit(p, scn.p_total - p)

    if len(xs) > 1:
        step = float(xs[1] - xs[0])
        f = lambda x: _gamma(scn, x, h_best, powers_at(p_best))
        x_best, v_best = _refine_axis(f, x_best, step, x_lo, x_hi, (x_best, v_best))
    if len(hs) > 1:
        step = float(hs[1] - hs[0])
        f = lambda h: _gamma(scn, x_best, h, powers_at(p_best))
        h_best, v_best = _refine_axis(f, h_best, step, h_lo, h_hi, (h_best, v_best))
    if len(ps) > 1:
        step = float(ps[1] - ps[0])
        f = lambda p: _gamma(scn, x_best, h_best, powers_at(p))
        p_best, v_best = _refine_axis(f, p_best, step, p_lo, p_hi, (p_best, v_best))

    powers = powers_at(p_best)
    gamma = _gamma(scn, x_best, h_best, powers)
    eps = decoding_error_probability(gamma, blk)
    return SolveResult("exhaustive", x_best, h_best, powers, gamma, eps, 1, (gamma,))


def fixed_location_baseline(
    scn: FreeSpaceScenario | Atg3dScenario, blk: BlocklengthParams | None = None
) -> SolveResult:
    """Pin the relay placement (band/box midpoint) and optimise the power split."""
    blk = _resolve_blk(scn, blk)
    x = 0.5 * (scn.d1 + scn.d2)
    if isinstance(scn, Atg3dScenario):
        height = 0.5 * (scn.h_min + scn.h_max)
        powers = optimal_power_for_gains(*hop_gains_3d(scn, x, height), scn.p_total)
        gamma = _gamma(scn, x, height, powers)
    else:
        height = scn.H
        powers = optimal_power_given_x(scn, x)
        gamma = snr_at(scn, x, powers)
    eps = decoding_error_probability(gamma, blk)
    return SolveResult("fixed-location", x, height, powers, gamma, eps, 1, (gamma,))


def fixed_power_baseline(
    scn: FreeSpaceScenario | Atg3dScenario, blk: BlocklengthParams | None = None
) -> SolveResult:
    """Pin an even power split and optimise the placement."""
    blk = _resolve_blk(scn, blk)
    powers = PowerSplit.even(scn.p_total)
    if isinstance(scn, Atg3dScenario):
        x = 0.5 * (scn.d1 + scn.d2)
        height = 0.5 * (scn.h_min + scn.h_max)
        gamma = _gamma(scn, x, height, powers)
        trace: list[float] = []
        for _ in range(BCD_MAX_ITERS):
            new_height = optimize_height(scn, x, powers)
            if _gamma(scn, x, new_height, powers) >= _gamma(scn, x, height, powers):
                height = new_height
            new_x = optimize_x(scn, height, powers)
            if _gamma(scn, new_x, height, powers) >= _gamma(scn, x, height, powers):
                x = new_x
            new_gamma = _gamma(scn, x, height, powers)
            trace.append(new_gamma)
            if new_gamma - gamma <= BCD_REL_TOL * max(gamma, 1e-300):
                gamma = new_gamma
                break
            gamma = new_gamma
        eps = decoding_error_probability(gamma, blk)
        return SolveResult("fixed-power", x, height, powers, gamma, eps,
                           len(trace), tuple(trace))
    x = optimal_location_given_power(scn, powers)
    gamma = snr_at(scn, x, powers)
    eps = decoding_error_probability(gamma, blk)
    return SolveResult("fixed-power", x, scn.H, powers, gamma, eps, 1, (gamma,))


def fixed_height_baseline(
    scn: Atg3dScenario,
    blk: BlocklengthParams | None = None,
    height: float = DEFAULT_FIXED_HEIGHT,
) -> SolveResult:
    """Pin the flying height and alternate the power and offset blocks."""
    if not isinstance(scn, Atg3dScenario):
        raise TypeError("fixed_height_baseline applies to the air-to-ground model only")
    blk = _resolve_blk(scn, blk)
    if not (scn.h_min <= height <= scn.h_max):
        raise ValueError(f"pinned height {height} outside [{scn.h_min}, {scn.h_max}]")
    x = 0.5 * (scn.d1 + scn.d2)
    powers = PowerSplit.even(scn.p_total)
    gamma = _gamma(scn, x, height, powers)
    trace: list[float] = []
    for _ in range(BCD_MAX_ITERS):
        powers = optimal_power_for_gains(*hop_gains_3d(scn, x, height), scn.p_total)
        new_x = optimize_x(scn, height, powers)
        if _gamma(scn, new_x, height, powers) >= _gamma(scn, x, height, powers):
            x = new_x
        new_gamma = _gamma(scn, x, height, powers)
        trace.append(new_gamma)
        if new_gamma - gamma <= BCD_REL_TOL * max(gamma, 1e-300):
            gamma = new_gamma
            break
        gamma = new_gamma
    eps = decoding_error_probability(gamma, blk)
    return SolveResult("fixed-height", x, height, powers, gamma, eps,
                       len(trace), tuple(trace))
