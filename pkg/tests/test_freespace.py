"""Free-space solver blocks against brute-force grid oracles."""

import math

import numpy as np
import pytest

from uavrelay import (
    BlocklengthParams,
    FreeSpaceScenario,
    PowerSplit,
    bcd_solve,
    cubic_location_candidates,
    decoding_error_probability,
    freespace_gains,
    optimal_location_given_power,
    optimal_power_given_x,
    optimal_power_for_gains,
    snr_at,
)
from uavrelay.freespace import _location_objective

from conftest import random_freespace


def grid_power_argmax(h1, h2, p_total, step_frac=1e-5):
    """Brute-force p1 maximising the relay SNR, independent of the library."""
    p1 = np.arange(step_frac, 1.0, step_frac) * p_total
    p2 = p_total - p1
    num = h1 * h2 * p1 * p2
    den = h1 * p1 + h2 * p2 + 1.0
    return float(p1[int(np.argmax(num / den))])


def grid_location_argmax(scn, powers, step=0.001):
    xs = np.minimum(np.arange(scn.d1, scn.d2 + step / 2, step), scn.d2)
    h1 = scn.beta1 / (scn.H**2 + xs**2)
    h2 = scn.beta2 / (scn.H**2 + (scn.D - xs) ** 2)
    num = h1 * h2 * powers.p1 * powers.p2
    den = h1 * powers.p1 + h2 * powers.p2 + 1.0
    return float(xs[int(np.argmax(num / den))])


def test_snr_at_consistency(freespace_scn):
    ps = PowerSplit(1.0, 3.0)
    h1, h2 = freespace_gains(freespace_scn, 80.0)
    want = h1 * h2 * 1.0 * 3.0 / (h1 * 1.0 + h2 * 3.0 + 1.0)
    assert snr_at(freespace_scn, 80.0, ps) == pytest.approx(want, rel=1e-14)


def test_power_split_matches_grid(rng):
    for _ in range(60):
        scn = random_freespace(rng)
        x = float(rng.uniform(scn.d1, scn.d2))
        h1, h2 = freespace_gains(scn, x)
        got = optimal_power_for_gains(h1, h2, scn.p_total)
        want_p1 = grid_power_argmax(h1, h2, scn.p_total)
        assert abs(got.p1 - want_p1) <= 1e-4 * scn.p_total
        assert got.total == pytest.approx(scn.p_total, rel=1e-12)


def test_power_split_stationarity(rng):
    # closed form should zero the derivative of gamma in p1
    for _ in range(100):
        scn = random_freespace(rng)
        x = float(rng.uniform(scn.d1, scn.d2))
        h1, h2 = freespace_gains(scn, x)
        ps = optimal_power_for_gains(h1, h2, scn.p_total)
        g0 = snr_at(scn, x, ps)
        dp = 1e-7 * scn.p_total
        gp = snr_at(scn, x, PowerSplit(ps.p1 + dp, ps.p2 - dp))
        gm = snr_at(scn, x, PowerSplit(ps.p1 - dp, ps.p2 + dp))
        slope = (gp - gm) / (2 * dp)
        assert abs(slope) <= 1e-6 * g0 / scn.p_total
        assert g0 >= max(gp, gm) - 1e-12 * g0


def test_power_split_symmetric_gains():
    # equal gains: exact even split, not only approximately
    ps = optimal_power_for_gains(2.5e-3, 2.5e-3, 4.0)
    assert ps.p1 == 2.0
    # near-equal within the symmetric tolerance
    ps = optimal_power_for_gains(2.5e-3, 2.5e-3 * (1 + 1e-13), 4.0)
    assert ps.p1 == 2.0


def test_power_split_favors_weaker_hop():
    # more power flows into the weaker link
    ps = optimal_power_for_gains(1e-4, 1e-2, 4.0)
    assert ps.p1 > 2.0
    ps = optimal_power_for_gains(1e-2, 1e-4, 4.0)
    assert ps.p1 < 2.0


def test_power_split_invalid_inputs():
    with pytest.raises(ValueError):
        optimal_power_for_gains(-1.0, 1.0, 4.0)
    with pytest.raises(ValueError):
        optimal_power_for_gains(1.0, 1.0, 0.0)


def test_optimal_power_given_x(freespace_scn):
    ps = optimal_power_given_x(freespace_scn, 100.0)
    h1, h2 = freespace_gains(freespace_scn, 100.0)
    assert ps == optimal_power_for_gains(h1, h2, freespace_scn.p_total)


def test_cubic_candidates_symmetric_scenario():
    # equal gains and even power: x = D/2 must be a stationary point
    scn = FreeSpaceScenario.from_db(200.0, 120.0, 10.0, 190.0, 55.0, 55.0, 4.0)
    ps = PowerSplit.even(4.0)
    cands = cubic_location_candidates(scn, ps)
    assert any(abs(c - 100.0) <= 1e-8 * scn.D for c in cands)


def test_cubic_candidates_are_stationary(rng):
    # every returned candidate zeroes the derivative of the denominator
    for _ in range(50):
        scn = random_freespace(rng)
        ps = optimal_power_given_x(scn, 0.5 * (scn.d1 + scn.d2))
        for c in cubic_location_candidates(scn, ps):
            h = 1e-6 * scn.D
            lo = _location_objective(scn, ps, c - h)
            hi = _location_objective(scn, ps, c + h)
            slope = (hi - lo) / (2 * h)
            mid = _location_objective(scn, ps, c)
            assert abs(slope) * h <= 1e-9 * abs(mid)


def test_location_matches_grid(rng):
    for _ in range(25):
        scn = random_freespace(rng)
        ps = optimal_power_given_x(scn, 0.5 * (scn.d1 + scn.d2))
        got = optimal_location_given_power(scn, ps)
        want = grid_location_argmax(scn, ps)
        step = 0.001
        assert abs(got - want) <= max(2 * step, 1e-6 * scn.D)
        # and the returned point is at least as good as the grid winner
        assert snr_at(scn, got, ps) >= snr_at(scn, want, ps) * (1 - 1e-12)


def test_location_stays_in_band(rng):
    for _ in range(50):
        scn = random_freespace(rng)
        ps = PowerSplit.even(scn.p_total)
        x = optimal_location_given_power(scn, ps)
        assert scn.d1 <= x <= scn.d2


def test_bcd_reference_scenario(freespace_scn, blk):
    res = bcd_solve(freespace_scn, blk)
    assert res.solver == "bcd"
    assert res.iterations <= 10
    # frozen from this library's own converged fixed point; guards regressions
    assert res.snr == pytest.approx(10.0402303484, rel=1e-9)
    assert res.x == pytest.approx(36.34, abs=0.05)
    assert res.powers.p1 == pytest.approx(2.5289, abs=1e-3)
    assert res.error_prob == pytest.approx(1.085453e-05, rel=1e-5)


def test_bcd_trace_monotone(freespace_scn, blk):
    res = bcd_solve(freespace_scn, blk)
    assert len(res.trace) == res.iterations
    assert all(b >= a for a, b in zip(res.trace, res.trace[1:]))
    assert res.trace[-1] == pytest.approx(res.snr, rel=1e-12)


def test_bcd_fixed_point(freespace_scn, blk):
    # re-solving each block at the reported optimum does not move it
    # the stopping rule bounds the SNR improvement, so the block variables
    # are pinned down only to about sqrt(rel_tol) in relative terms
    res = bcd_solve(freespace_scn, blk)
    ps = optimal_power_given_x(freespace_scn, res.x)
    assert ps.p1 == pytest.approx(res.powers.p1, rel=1e-4)
    x = optimal_location_given_power(freespace_scn, res.powers)
    assert x == pytest.approx(res.x, abs=1e-4 * freespace_scn.D)


def test_bcd_monotone_on_random_scenarios(rng):
    blk = BlocklengthParams(100, 80)
    for _ in range(25):
        scn = random_freespace(rng)
        res = bcd_solve(scn, blk)
        assert all(b >= a for a, b in zip(res.trace, res.trace[1:]))
        assert scn.d1 <= res.x <= scn.d2
        assert res.error_prob == pytest.approx(
            decoding_error_probability(res.snr, blk), rel=1e-14
        )


def test_bcd_custom_start(freespace_scn, blk):
    res = bcd_solve(freespace_scn, blk, x0=160.0, powers0=PowerSplit(0.5, 3.5))
    assert res.snr == pytest.approx(10.0402303484, rel=1e-8)


def test_bcd_rejects_bad_start(freespace_scn, blk):
    with pytest.raises(ValueError):
        bcd_solve(freespace_scn, blk, x0=10.0)
    with pytest.raises(ValueError):
        bcd_solve(freespace_scn, blk, powers0=PowerSplit(3.0, 3.0))  # over budget
    # spending less than the whole budget is a legal starting point
    res = bcd_solve(freespace_scn, blk, powers0=PowerSplit(1.0, 1.0))
    assert res.snr == pytest.approx(10.0402303484, rel=1e-8)
