# Reduced system: cubic right-hand side, branch points, constants recovery,
# and the time / Cayley-Klein quadratures against the ODE oracle.
from __future__ import annotations

import math

import numpy as np
import pytest

from helpers import (
    group_distance,
    measured_half_period,
    rand_band_roots,
    rand_params,
    rand_su2,
)
from toytop.dynamics import (
    TopParams,
    first_integrals,
    simulate,
    state_from_omega,
    u_dot_of_state,
    u_of_state,
)
from toytop.reduction import (
    BranchPoints,
    DegenerateRootsError,
    InfeasibleConstantsError,
    ReducedConstants,
    branch_points,
    cayley_klein_quadrature,
    constants_from_roots,
    leg_time,
    matching_branch,
    nutation_half_period,
    r_poly,
    reduced_rhs,
    turning_point_state,
    w_at_pm1,
)
from toytop.su2 import Su2Vector


def _random_constants(rng):
    params = rand_params(rng)
    st = state_from_omega(rand_su2(rng), Su2Vector(*rng.normal(size=3)), params)
    fi = first_integrals(st, params)
    return st, ReducedConstants(fi.l, fi.n, fi.h, params)


def test_reduced_rhs_vanishes_at_branch_points():
    rng = np.random.default_rng(20)
    for _ in range(30):
        _, consts = _random_constants(rng)
        try:
            bp = branch_points(consts)
        except InfeasibleConstantsError:
            continue
        for e in (bp.e1, bp.e2, bp.e3):
            assert abs(reduced_rhs(e, consts)) < 1e-9 * max(1.0, abs(e)) ** 3


def test_reduced_rhs_matches_u_dot_along_motion():
    rng = np.random.default_rng(21)
    st, consts = _random_constants(rng)
    params = consts.params
    e4sq = params.e4**2
    for s in simulate(st, 1e-3, 2.0, params)[::100]:
        u = u_of_state(s)
        ud = u_dot_of_state(s, params)
        resid = ud * ud - (2.0 / params.s) * reduced_rhs(u, consts) / (e4sq - u * u)
        assert abs(resid) < 1e-10


def test_branch_points_ordering_and_validation():
    rng = np.random.default_rng(22)
    count = 0
    for _ in range(50):
        _, consts = _random_constants(rng)
        try:
            bp = branch_points(consts)
        except InfeasibleConstantsError:
            continue
        count += 1
        assert -1.0 <= bp.e1 <= bp.e2 <= 1.0 <= bp.e3
        assert bp.e4 > 1.0
    assert count > 10
    with pytest.raises(ValueError):
        BranchPoints(0.5, 0.2, 2.0, 1.5)
    with pytest.raises(ValueError):
        BranchPoints(0.2, 0.5, 2.0, 0.9)


def test_constants_round_trip_all_branches():
    rng = np.random.default_rng(23)
    for _ in range(30):
        params = rand_params(rng)
        bp = BranchPoints(*rand_band_roots(rng), params.e4)
        for branch in range(4):
            consts = constants_from_roots(bp, params, branch)
            bp2 = branch_points(consts)
            assert abs(bp2.e1 - bp.e1) < 1e-9
            assert abs(bp2.e2 - bp.e2) < 1e-9
            assert abs(bp2.e3 - bp.e3) < 1e-9
            assert matching_branch(consts, bp) == branch


def test_w_at_pm1_consistent_with_curve():
    """w at u = +-1 must satisfy w^2 = R(u) on the quintic curve."""
    rng = np.random.default_rng(24)
    for _ in range(20):
        params = rand_params(rng)
        bp = BranchPoints(*rand_band_roots(rng), params.e4)
        for branch in range(4):
            consts = constants_from_roots(bp, params, branch)
            wp1, wm1 = w_at_pm1(bp, consts)
            assert abs(wp1 * wp1 - r_poly(1.0, bp)) < 1e-9 * max(1.0, wp1 * wp1)
            assert abs(wm1 * wm1 - r_poly(-1.0, bp)) < 1e-9 * max(1.0, wm1 * wm1)


def test_turning_point_state_reproduces_integrals():
    rng = np.random.default_rng(25)
    for _ in range(10):
        params = rand_params(rng)
        bp = BranchPoints(*rand_band_roots(rng), params.e4)
        consts = constants_from_roots(bp, params, int(rng.integers(0, 4)))
        for upper in (False, True):
            st = turning_point_state(bp, consts, upper=upper)
            fi = first_integrals(st, params)
            assert abs(fi.h - consts.h) < 1e-11 * max(1.0, abs(consts.h))
            assert abs(fi.l - consts.l) < 1e-11 * max(1.0, abs(consts.l))
            assert abs(fi.n - consts.n) < 1e-11 * max(1.0, abs(consts.n))
            e = bp.e2 if upper else bp.e1
            assert abs(u_of_state(st) - e) < 1e-13
            assert abs(u_dot_of_state(st, params)) < 1e-12


def test_half_period_against_ode():
    rng = np.random.default_rng(26)
    params = TopParams(1.1, 0.9, 0.8, 1.3)
    bp = BranchPoints(0.1, 0.6, 1.8, params.e4)
    consts = constants_from_roots(bp, params, 0)
    t_quad = nutation_half_period(bp, params)
    st = turning_point_state(bp, consts)
    t_ode = measured_half_period(st, params, 3.0 * t_quad)
    assert abs(t_quad - t_ode) < 1e-6 * t_ode
    assert abs(leg_time(bp, params, bp.e1, bp.e2) - t_quad) < 1e-10


def test_leg_time_additivity():
    params = TopParams(1.0, 1.0, 1.0, 1.0)
    bp = BranchPoints(0.2, 0.8, 1.5, params.e4)
    mid = 0.55
    total = leg_time(bp, params, bp.e1, bp.e2)
    assert (
        abs(leg_time(bp, params, bp.e1, mid) + leg_time(bp, params, mid, bp.e2) - total)
        < 1e-10
    )
    with pytest.raises(ValueError):
        leg_time(bp, params, 0.1, 0.5)  # leaves the band


def test_cayley_klein_quadrature_vs_ode():
    """Attitude propagation along a leg agrees with the simulated motion."""
    for A, C in ((1.0, 1.0), (1.3, 0.9)):
        params = TopParams(A, C, 1.1, 0.9)
        bp = BranchPoints(0.15, 0.65, 1.6, params.e4)
        consts = constants_from_roots(bp, params, 1)
        st = turning_point_state(bp, consts)
        t_half = nutation_half_period(bp, params)
        states = simulate(st, 2.5e-4, t_half, params)
        # pick an interior stretch of the up-leg
        i0, i1 = len(states) // 5, 4 * len(states) // 5
        u0, u1 = u_of_state(states[i0]), u_of_state(states[i1])
        prop = cayley_klein_quadrature(bp, consts, u0, u1, states[i0].phi)
        assert group_distance(prop, states[i1].phi) < 1e-8


def test_degenerate_band_rejected():
    params = TopParams(1.0, 1.0, 1.0, 1.0)
    bp = BranchPoints(0.5, 0.5, 2.0, params.e4)
    with pytest.raises(DegenerateRootsError):
        nutation_half_period(bp, params)
