"""One-dimensional line-search helpers for (near) unimodal maximisation."""

from __future__ import annotations

import math
from typing import Callable, Sequence

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _best_of(f: Callable[[float], float], candidates) -> tuple[float, float]:
    # ascending candidate order + strict improvement = smallest x wins ties
    best_x = None
    best_v = -math.inf
    for x in candidates:
        v = f(x)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximiser on [lo, hi]; exact for unimodal f.

    Shrinks the bracket until it is narrower than tol, then returns the
    best of the bracket midpoint and the two original endpoints, so a
    monotone profile yields the better endpoint.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if hi - lo <= tol:
        return _best_of(f, (lo, 0.5 * (lo + hi), hi))
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
    return _best_of(f, (lo, 0.5 * (a + b), hi))


def interior_local_maxima(values: Sequence[float]) -> list[int]:
    """Indices 0 < i < n-1 where values[i] strictly exceeds both neighbours."""
    return [
        i
        for i in range(1, len(values) - 1)
        if values[i - 1] < values[i] and values[i] > values[i + 1]
    ]


def line_search_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    presamples: int = 17,
    fallback_points: int = 512,
) -> tuple[float, float]:
    """Maximise f on [lo, hi], guarding against non-unimodal profiles.

    A coarse pre-sample checks for multiple interior peaks.  Clean
    profiles go straight to golden-section search; suspicious ones fall
    back to a dense grid followed by a local golden-section refinement
    around the best grid point.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if hi == lo:
        return lo, f(lo)
    xs = [lo + (hi - lo) * i / (presamples - 1) for i in range(presamples)]
    vals = [f(x) for x in xs]
    if len(interior_local_maxima(vals)) <= 1:
        x_best, v_best = golden_section_max(f, lo, hi, tol)
    else:
        step = (hi - lo) / (fallback_points - 1)
        grid = [lo + step * i for i in range(fallback_points)]
        grid_vals = [f(x) for x in grid]
        i = max(range(fallback_points), key=lambda k: (grid_vals[k], -k))
        a = max(lo, grid[i] - step)
        b = min(hi, grid[i] + step)
        x_best, v_best = golden_section_max(f, a, b, tol)
    # keep the sampled evidence: never return less than the best pre-sample
    i = max(range(len(xs)), key=lambda k: (vals[k], -k))
    if vals[i] > v_best:
        return xs[i], vals[i]
    return x_best, v_best


def derivative_bisection_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    fd_step: float | None = None,
) -> tuple[float, float]:
    """Cross-check maximiser: bisect on the sign of a finite-difference slope.

    Assumes f is smooth and unimodal.  When the slope does not change
    sign across [lo, hi] the profile is monotone and the better endpoint
    is returned.
    """
    if hi <= lo:
        return lo, f(lo)
    span = hi - lo
    if fd_step is None:
        fd_step = 1e-6 * span

    def slope(x: float) -> float:
        a = max(lo, x - fd_step)
        b = min(hi, x + fd_step)
        return (f(b) - f(a)) / (b - a)

    a, b = lo, hi
    if slope(a) <= 0.0 or slope(b) >= 0.0:
        return _best_of(f, (lo, hi))
    while b - a > tol:
        mid = 0.5 * (a + b)
        if slope(mid) > 0.0:
            a = mid
        else:
            b = mid
    return _best_of(f, (lo, 0.5 * (a + b), hi))
