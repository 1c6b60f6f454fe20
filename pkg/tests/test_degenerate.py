# Degenerate root configurations: detection, regular precession, the two
# elliptic closed forms, and the Lagrange-top limit.
from __future__ import annotations

import math

import numpy as np
import pytest

from helpers import group_distance, ode_u_of_t
from toytop.degenerate import (
    aperiodic_cayley_klein,
    aperiodic_solution,
    aperiodic_time,
    aperiodic_u_of_x,
    aperiodic_x_of_time,
    detect,
    e3e4_cayley_klein,
    e3e4_solution,
    e3e4_time,
    e3e4_u_of_time,
    e3e4_u_of_x,
    lagrange_limit_time,
    precession_rates,
)
from toytop.dynamics import TopParams, first_integrals, simulate, u_of_state
from toytop.reduction import (
    BranchPoints,
    ReducedConstants,
    constants_from_roots,
    leg_time,
    nutation_half_period,
    turning_point_state,
)
from toytop.su2 import SpecialUnitary, Su2Vector


def test_detect_taxonomy():
    e4 = math.sqrt(2.0)
    assert detect(BranchPoints(0.2, 0.6, 1.3, e4)).kind == "generic"
    assert detect(BranchPoints(0.5, 0.5, 1.3, e4)).kind == "stable_precession"
    assert detect(BranchPoints(0.2, 1.0, 1.0, e4)).kind == "aperiodic"
    assert detect(BranchPoints(0.2, 0.6, e4, e4)).kind == "e3_equals_e4"
    # e3 far above e4 is not an e3 = e4 collision
    assert detect(BranchPoints(0.2, 0.6, 3.0, e4)).kind == "generic"
    assert (
        detect(BranchPoints(0.2, 0.6, 3.0, 20.0), lagrange_e4=10.0).kind
        == "lagrange_limit"
    )


def test_precession_rates_against_ode():
    params = TopParams(1.0, 0.8, 1.0, 1.0)
    e = 0.55
    bp = BranchPoints(e, e, 1.9, params.e4)
    consts = constants_from_roots(bp, params, 0)
    prec, spin = precession_rates(e, consts)
    st = turning_point_state(bp, consts)
    states = simulate(st, 1e-3, 4.0, params)
    # constant inclination
    assert max(abs(u_of_state(s) - e) for s in states) < 1e-9
    # the tip angle advances at the precession rate
    from toytop.tip_curve import tip_point

    cs = np.array([tip_point(s.phi, params.s) for s in states])
    phis = np.unwrap(np.angle(cs))
    rate = (phis[-1] - phis[0]) / (states[-1].t - states[0].t)
    assert abs(rate - prec) < 1e-8 * max(1.0, abs(prec))
    # spin rate equals n / C by construction
    assert abs(spin - consts.n / params.C) < 1e-14
    with pytest.raises(ValueError):
        precession_rates(0.3, consts)  # not a double root


def _e3e4_setup(A_over_C: float = 1.0):
    e3 = math.sqrt(2.0)
    A = e3 * e3 - 1.0  # makes e4 = e3 with s = p = 1
    params = TopParams(A, A / A_over_C, 1.0, 1.0)
    bp = BranchPoints(0.2, 0.8, e3, params.e4)
    consts = constants_from_roots(bp, params, 0)
    return bp, consts, params


@pytest.mark.parametrize("a_over_c", [1.0, 1.3])
def test_e3e4_closed_form_vs_ode(a_over_c):
    bp, consts, params = _e3e4_setup(a_over_c)
    sol = e3e4_solution(bp, consts)
    period = 2.0 * nutation_half_period(bp, params)
    st = turning_point_state(bp, consts, upper=True)
    spline = ode_u_of_t(st, params, 2.0 * period, dt=2.5e-4)
    states = simulate(st, 2.5e-4, 2.0 * period, params)
    max_u = 0.0
    for t in np.linspace(0.0, 2.0 * period, 60):
        u_cf, x = e3e4_u_of_time(float(t), sol)
        max_u = max(max_u, abs(u_cf - float(spline(t))))
    assert max_u < 1e-6
    # attitude agreement at a few times
    for idx in (len(states) // 4, len(states) // 2):
        t = states[idx].t
        _, x = e3e4_u_of_time(float(t), sol)
        phi = e3e4_cayley_klein(x, sol)
        phi.check(1e-8)
        assert group_distance(phi, states[idx].phi) < 1e-6


def test_e3e4_time_inverts_u_of_x():
    bp, consts, params = _e3e4_setup()
    sol = e3e4_solution(bp, consts)
    t = 0.37
    u, x = e3e4_u_of_time(t, sol)
    assert abs(e3e4_time(x, sol).real - t) < 1e-10
    assert abs(e3e4_u_of_x(x, sol).real - u) < 1e-12
    assert abs(e3e4_u_of_x(0.0j, sol) - bp.e2) < 1e-10


def _aperiodic_setup():
    params = TopParams(1.1, 1.1, 1.2, 0.8)
    bp = BranchPoints(0.3, 1.0, 1.0, params.e4)
    consts = constants_from_roots(bp, params, 0)
    return bp, consts, params


def test_aperiodic_closed_form_vs_ode():
    bp, consts, params = _aperiodic_setup()
    sol = aperiodic_solution(bp, consts)
    st = turning_point_state(bp, consts)
    t_end = 8.0
    states = simulate(st, 2.5e-4, t_end, params)
    spline = ode_u_of_t(st, params, t_end, dt=2.5e-4)
    us = [u_of_state(s) for s in states]
    # the ODE approaches u = 1 monotonically and never crosses it
    assert all(b >= a - 1e-12 for a, b in zip(us, us[1:]))
    assert max(us) <= 1.0 + 1e-9
    for t in np.linspace(0.0, t_end, 40):
        x = aperiodic_x_of_time(float(t), sol)
        u_cf = float(aperiodic_u_of_x(x, sol).real)
        u_ode = float(spline(t))
        if u_ode < 1.0 - 1e-3:
            assert abs(u_cf - u_ode) < 1e-6
        assert abs(aperiodic_time(x, sol).real - t) < 1e-9
    # attitude agreement mid-flight
    idx = len(states) // 3
    x = aperiodic_x_of_time(states[idx].t, sol)
    phi = aperiodic_cayley_klein(x, sol)
    phi.check(1e-8)
    assert group_distance(phi, states[idx].phi) < 1e-6


def test_aperiodic_rejects_wrong_roots():
    params = TopParams(1.0, 1.0, 1.0, 1.0)
    bp = BranchPoints(0.2, 0.8, 1.5, params.e4)
    consts = constants_from_roots(bp, params, 0)
    with pytest.raises(ValueError):
        aperiodic_solution(bp, consts)
    with pytest.raises(ValueError):
        e3e4_solution(bp, consts)


def test_lagrange_limit_monotone_convergence():
    A, p = 1.0, 1.0
    e1, e2, e3 = 0.1, 0.6, 1.8
    t_limit = lagrange_limit_time(e1, e2, e1, e2, e3, A, p)
    prev = None
    for e4 in (10.0, 100.0, 1000.0):
        s = A / (p * (e4 * e4 - 1.0))
        params = TopParams(A, A, s, p)
        bp = BranchPoints(e1, e2, e3, params.e4)
        t_gen = leg_time(bp, params, e1, e2)
        assert t_gen > t_limit
        if prev is not None:
            assert t_gen < prev
        prev = t_gen
    assert abs(prev - t_limit) < 1e-5 * t_limit


def test_lagrange_limit_validation():
    with pytest.raises(ValueError):
        lagrange_limit_time(0.1, 0.7, 0.1, 0.6, 1.8, 1.0, 1.0)  # leaves band
    with pytest.raises(ValueError):
        lagrange_limit_time(0.1, 0.5, 0.6, 0.1, 1.8, 1.0, 1.0)  # unsorted roots
