"""High-SNR closed-form solver: per-case grid oracles, convexity
certificates and the case-selection logic."""

import numpy as np
import pytest

from uavrelay import (
    FreeSpaceScenario,
    PowerSplit,
    condition1_hessian,
    gamma_tilde,
    high_snr_solve,
    snr_at,
    solve_condition1,
    solve_condition2,
    solve_condition3,
    unconstrained_location,
)

from conftest import random_freespace


def gamma_tilde_grid(scn, x_grid, p1_grid):
    """Vectorised surrogate over (x, p1) grids, independent of the library."""
    x = np.asarray(x_grid)[:, None]
    p1 = np.asarray(p1_grid)[None, :]
    p2 = scn.p_total - p1
    d1_sq = scn.H**2 + x**2
    d2_sq = scn.H**2 + (scn.D - x) ** 2
    num = scn.beta1 * scn.beta2 * p1 * p2
    den = scn.beta2 * p2 * d1_sq + scn.beta1 * p1 * d2_sq
    return num / den


def mirror(scn):
    """Reflect the geometry about D/2 and swap the hop gains."""
    return FreeSpaceScenario(
        D=scn.D,
        H=scn.H,
        d1=scn.D - scn.d2,
        d2=scn.D - scn.d1,
        beta1=scn.beta2,
        beta2=scn.beta1,
        p_total=scn.p_total,
    )


def test_gamma_tilde_never_underestimates(rng):
    for _ in range(200):
        scn = random_freespace(rng)
        x = float(rng.uniform(scn.d1, scn.d2))
        p1 = float(rng.uniform(0.05, 0.95)) * scn.p_total
        ps = PowerSplit(p1, scn.p_total - p1)
        assert gamma_tilde(scn, x, ps) >= snr_at(scn, x, ps)


def test_unconstrained_location(freespace_scn):
    # equal weighted gains put the surrogate optimum at the midpoint
    ps = PowerSplit(freespace_scn.beta2, freespace_scn.beta1)
    x0, clamped = unconstrained_location(freespace_scn, ps)
    assert x0 == pytest.approx(100.0, rel=1e-12)
    assert clamped == x0
    # all the weight on hop 2 drags the optimum to the source side
    ps = PowerSplit(1e-6, 4.0)
    x0, clamped = unconstrained_location(freespace_scn, ps)
    assert x0 < freespace_scn.d1
    assert clamped == freespace_scn.d1


def test_hessian_positive_definite(rng):
    for _ in range(200):
        scn = random_freespace(rng)
        p1 = float(rng.uniform(0.01, 0.99)) * scn.p_total
        h = condition1_hessian(scn, p1, scn.p_total - p1)
        assert h[0, 1] == h[1, 0]
        eigs = np.linalg.eigvalsh(h)
        assert eigs.min() > 0.0


def test_hessian_rejects_nonpositive_power(freespace_scn):
    with pytest.raises(ValueError):
        condition1_hessian(freespace_scn, 0.0, 4.0)


def test_condition1_interior_stationarity(freespace_scn):
    rep = solve_condition1(freespace_scn)
    assert rep.condition == "I"
    assert rep.case == "unequal-beta"
    # surrogate flat in p1 along the x0(p1) path at the reported optimum
    def path_value(p1):
        ps = PowerSplit(p1, freespace_scn.p_total - p1)
        _, x = unconstrained_location(freespace_scn, ps)
        return gamma_tilde(freespace_scn, x, ps)

    dp = 1e-7 * freespace_scn.p_total
    v0 = path_value(rep.powers.p1)
    assert v0 >= path_value(rep.powers.p1 + dp) - 1e-12 * v0
    assert v0 >= path_value(rep.powers.p1 - dp) - 1e-12 * v0


def test_condition1_equal_beta_closed_form():
    scn = FreeSpaceScenario.from_db(200.0, 120.0, 30.0, 170.0, 55.0, 55.0, 4.0)
    rep = solve_condition1(scn)
    assert rep.case == "equal-beta"
    assert rep.powers.p1 == pytest.approx(2.0, rel=1e-14)
    _, x = unconstrained_location(scn, rep.powers)
    assert rep.x == pytest.approx(x, rel=1e-12)


def unclamped_offset(scn, p1):
    return scn.D * scn.beta1 * p1 / (scn.beta1 * p1 + scn.beta2 * (scn.p_total - p1))


def test_condition2_matches_grid(rng):
    # left-edge case: maximise over the p1 range whose free offset
    # lands at or left of d1
    for _ in range(20):
        scn = random_freespace(rng)
        rep = solve_condition2(scn)
        assert rep.x == scn.d1
        p1 = np.linspace(1e-9, 1.0 - 1e-9, 1_000_001) * scn.p_total
        mask = unclamped_offset(scn, p1) <= scn.d1
        assert mask.any()
        vals = gamma_tilde_grid(scn, [scn.d1], p1[mask])[0]
        best = float(p1[mask][int(np.argmax(vals))])
        assert abs(rep.powers.p1 - best) <= 1e-4 * scn.p_total


def test_condition3_matches_grid(rng):
    for _ in range(20):
        scn = random_freespace(rng)
        rep = solve_condition3(scn)
        assert rep.x == scn.d2
        p1 = np.linspace(1e-9, 1.0 - 1e-9, 1_000_001) * scn.p_total
        mask = unclamped_offset(scn, p1) >= scn.d2
        assert mask.any()
        vals = gamma_tilde_grid(scn, [scn.d2], p1[mask])[0]
        best = float(p1[mask][int(np.argmax(vals))])
        assert abs(rep.powers.p1 - best) <= 1e-4 * scn.p_total


def test_selection_matches_profile_grid(rng):
    # the three cases together must reproduce the brute-force optimum of
    # the surrogate over (x, p1) with x free to clamp
    for _ in range(10):
        scn = random_freespace(rng)
        p1 = np.linspace(1e-9, 1.0 - 1e-9, 200_001) * scn.p_total
        x = np.clip(unclamped_offset(scn, p1), scn.d1, scn.d2)
        p2 = scn.p_total - p1
        d1_sq = scn.H**2 + x**2
        d2_sq = scn.H**2 + (scn.D - x) ** 2
        profile = (
            scn.beta1 * scn.beta2 * p1 * p2
            / (scn.beta2 * p2 * d1_sq + scn.beta1 * p1 * d2_sq)
        )
        want = float(profile.max())
        got = max(
            r.gamma_tilde
            for r in (solve_condition1(scn), solve_condition2(scn), solve_condition3(scn))
            if r.feasible
        )
        assert got >= want * (1 - 1e-9)


def test_condition2_edge_concavity(freespace_scn):
    # second differences of the surrogate in p1 at x = d1 stay non-positive
    p1 = np.linspace(0.01, 3.99, 2001)
    vals = gamma_tilde_grid(freespace_scn, [freespace_scn.d1], p1)[0]
    second = vals[:-2] - 2 * vals[1:-1] + vals[2:]
    assert second.max() <= 1e-12 * np.abs(vals).max()


def test_condition3_mirror_symmetry(rng):
    # reflecting the scenario swaps the two edge cases
    for _ in range(20):
        scn = random_freespace(rng)
        rep3 = solve_condition3(scn)
        rep2m = solve_condition2(mirror(scn))
        assert rep3.gamma_tilde == pytest.approx(rep2m.gamma_tilde, rel=1e-10)
        assert rep3.powers.p1 == pytest.approx(rep2m.powers.p2, rel=1e-8, abs=1e-12)


def test_matched_cross_gains_case():
    # b1 D2 == b2 D1 at the edge makes the surrogate denominator constant,
    # so the even split is stationary; H = 50 keeps it inside the case range
    D, H, d1 = 200.0, 50.0, 30.0
    ratio = (H**2 + (D - d1) ** 2) / (H**2 + d1**2)
    scn = FreeSpaceScenario(D, H, d1, 170.0, 1e5, 1e5 * ratio, 4.0)
    rep = solve_condition2(scn)
    assert rep.case == "matched-cross-gains"
    assert rep.powers.p1 == pytest.approx(2.0, rel=1e-12)

    # with H = 120 the even split leaves the case range and is clamped to
    # the boundary where the free offset crosses d1
    H = 120.0
    ratio = (H**2 + (D - d1) ** 2) / (H**2 + d1**2)
    scn = FreeSpaceScenario(D, H, d1, 170.0, 1e5, 1e5 * ratio, 4.0)
    rep = solve_condition2(scn)
    assert rep.case == "matched-cross-gains"
    p_up = d1 * scn.beta2 * 4.0 / ((D - d1) * scn.beta1 + d1 * scn.beta2)
    assert rep.powers.p1 == pytest.approx(p_up, rel=1e-12)


def test_selection_never_below_any_condition(rng):
    for _ in range(50):
        scn = random_freespace(rng)
        best = max(
            r.gamma_tilde
            for r in (solve_condition1(scn), solve_condition2(scn), solve_condition3(scn))
            if r.feasible
        )
        from uavrelay import BlocklengthParams

        res = high_snr_solve(scn, BlocklengthParams(100, 80))
        chosen = gamma_tilde(scn, res.x, res.powers)
        assert chosen >= best * (1 - 1e-12)


def test_reference_scenario(freespace_scn, blk):
    res = high_snr_solve(freespace_scn, blk)
    assert res.solver == "high-snr"
    # frozen from this library's converged output
    assert res.x == pytest.approx(35.8736, abs=1e-3)
    assert res.powers.p1 == pytest.approx(2.5381, abs=1e-3)
    assert res.snr == pytest.approx(10.0397605540, rel=1e-9)
    # sits within a percent of the exact BCD answer
    assert res.snr == pytest.approx(10.0402303484, rel=1e-2)


def test_reports_stay_in_bounds(rng):
    for _ in range(50):
        scn = random_freespace(rng)
        for rep in (solve_condition1(scn), solve_condition2(scn), solve_condition3(scn)):
            assert scn.d1 <= rep.x <= scn.d2
            assert 0.0 <= rep.powers.p1 <= scn.p_total
            assert rep.powers.total == pytest.approx(scn.p_total, rel=1e-9)
