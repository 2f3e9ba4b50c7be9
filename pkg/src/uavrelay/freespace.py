"""Joint power-split and placement solver for the inverse-square model.

Both blocks of the joint problem have closed forms: at a fixed position
the optimal power split maximising the end-to-end SNR spends the whole
budget and solves a quadratic, while at a fixed split the optimal ground
offset is a stationary point of a cubic (or a boundary of the allowed
band).  Alternating the two blocks yields a monotone SNR sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import FreeSpaceScenario, freespace_gains
from .cubic import cubic_real_roots
from .fbl import BlocklengthParams, PowerSplit, af_snr, decoding_error_probability

# Iteration defaults for the alternating solver.
BCD_REL_TOL = 1e-9
BCD_MAX_ITERS = 50


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a placement/power optimisation run.

    ``snr``/``error_prob`` are always recomputed from the returned
    placement and powers, and ``trace`` holds the per-iteration SNR of
    iterative solvers (single-entry for one-shot solvers).
    """

    solver: str
    x: float
    height: float
    powers: PowerSplit
    snr: float
    error_prob: float
    iterations: int
    trace: tuple[float, ...]


def snr_at(scn: FreeSpaceScenario, x: float, powers: PowerSplit) -> float:
    """End-to-end SNR at ground offset x under the given power split."""
    h1, h2 = freespace_gains(scn, x)
    return af_snr(h1, h2, powers)


def _finish(
    scn: FreeSpaceScenario,
    blk: BlocklengthParams,
    solver: str,
    x: float,
    powers: PowerSplit,
    iterations: int,
    trace: tuple[float, ...],
) -> SolveResult:
    gamma = snr_at(scn, x, powers)
    eps = decoding_error_probability(gamma, blk)
    return SolveResult(solver, x, scn.H, powers, gamma, eps, iterations, trace)


def optimal_power_for_gains(h1: float, h2: float, p_total: float) -> PowerSplit:
    """SNR-optimal power split for fixed hop gains, spending the full budget.

    With A = h1 - h2 and B = p_total h2 + 1 the maximiser is
    p1 = (sqrt(B (B + A p_total)) - B) / A; equal gains degenerate to an
    even split (the limit of the closed form).
    """
    if p_total <= 0.0:
        raise ValueError(f"power budget must be positive, got {p_total}")
    a = h1 - h2
    if abs(a) < 1e-12 * h1:
        p1 = 0.5 * p_total
    else:
        b = p_total * h2 + 1.0
        p1 = (math.sqrt(b * (b + a * p_total)) - b) / a
        p1 = min(max(p1, 0.0), p_total)
    return PowerSplit(p1, p_total - p1)


def optimal_power_given_x(scn: FreeSpaceScenario, x: float) -> PowerSplit:
    """Optimal power split at ground offset x (closed form, concave block)."""
    h1, h2 = freespace_gains(scn, x)
    return optimal_power_for_gains(h1, h2, scn.p_total)


def _location_objective(scn: FreeSpaceScenario, powers: PowerSplit, x: float) -> float:
    # Minimising p2 b2 D1(x) + p1 b1 D2(x) + D1(x) D2(x), with
    # D1 = H^2 + x^2 and D2 = H^2 + (D-x)^2, maximises the SNR at fixed powers.
    h_sq = scn.H * scn.H
    dist1 = h_sq + x * x
    dist2 = h_sq + (scn.D - x) * (scn.D - x)
    return powers.p2 * scn.beta2 * dist1 + powers.p1 * scn.beta1 * dist2 + dist1 * dist2


def cubic_location_candidates(scn: FreeSpaceScenario, powers: PowerSplit) -> list[float]:
    """Stationary points of the placement objective at a fixed power split.

    These are the real roots of 4 x^3 - 6 D x^2 + c x + d with
    c = 2 (D^2 + 2 H^2 + beta1 p1 + beta2 p2) and
    d = -2 D (H^2 + beta1 p1).  Roots are de-duplicated and sorted, but
    not filtered to the allowed band.
    """
    h_sq = scn.H * scn.H
    a = 4.0
    b = -6.0 * scn.D
    c = 2.0 * (scn.D * scn.D + 2.0 * h_sq + scn.beta1 * powers.p1 + scn.beta2 * powers.p2)
    d = -2.0 * scn.D * (h_sq + scn.beta1 * powers.p1)
    roots = sorted(cubic_real_roots(a, b, c, d))
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-9 * scn.D:
            deduped.append(r)
    return deduped


def optimal_location_given_power(scn: FreeSpaceScenario, powers: PowerSplit) -> float:
    """Best ground offset in [d1, d2] at a fixed power split.

    Compares the in-band stationary points against the band edges; when
    every stationary point is out of band the better edge wins.  Ties go
    to the smallest offset.
    """
    candidates = [x for x in cubic_location_candidates(scn, powers) if scn.d1 <= x <= scn.d2]
    candidates = sorted([scn.d1, scn.d2] + candidates)
    best_x = None
    best_obj = math.inf
    for x in candidates:
        obj = _location_objective(scn, powers, x)
        if obj < best_obj:
            best_x, best_obj = x, obj
    return best_x


def bcd_solve(
    scn: FreeSpaceScenario,
    blk: BlocklengthParams,
    x0: float | None = None,
    powers0: PowerSplit | None = None,
    rel_tol: float = BCD_REL_TOL,
    max_iters: int = BCD_MAX_ITERS,
) -> SolveResult:
    """Alternate the closed-form power and placement blocks until the SNR stalls.

    Starts from the band midpoint and an even split unless told otherwise.
    Each block is an exact maximiser, so the SNR trace is non-decreasing;
    iteration stops once the relative improvement drops below rel_tol.

    Raises:
        ValueError: when the initial point violates the scenario bounds.
    """
    if x0 is None:
        x0 = 0.5 * (scn.d1 + scn.d2)
    elif not (scn.d1 <= x0 <= scn.d2):
        raise ValueError(f"initial offset {x0} outside [{scn.d1}, {scn.d2}]")
    if powers0 is None:
        powers0 = PowerSplit.even(scn.p_total)
    elif powers0.total > scn.p_total * (1.0 + 1e-12):
        raise ValueError(
            f"initial powers exceed the budget: {powers0.total} > {scn.p_total}"
        )

    x = x0
    powers = powers0
    gamma = snr_at(scn, x, powers)
    trace: list[float] = []
    for _ in range(max_iters):
        powers = optimal_power_given_x(scn, x)
        x = optimal_location_given_power(scn, powers)
        new_gamma = snr_at(scn, x, powers)
        trace.append(new_gamma)
        if new_gamma - gamma <= rel_tol * max(gamma, 1e-300):
            gamma = new_gamma
            break
        gamma = new_gamma
    return _finish(scn, blk, "bcd", x, powers, len(trace), tuple(trace))
