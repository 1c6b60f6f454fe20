# Shared oracles and generators for the test suite: random feasible draws and
# ODE-based measurements used to cross-check the quadrature/closed-form paths.
from __future__ import annotations

import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from toytop.dynamics import TopParams, simulate, u_dot_of_state, u_of_state
from toytop.su2 import SpecialUnitary


def rand_su2(rng: np.random.Generator) -> SpecialUnitary:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return SpecialUnitary.from_alpha_beta(complex(v[0], v[1]), complex(v[2], v[3]))


def rand_params(rng: np.random.Generator) -> TopParams:
    A = rng.uniform(0.3, 3.0)
    C = rng.uniform(0.3, min(3.0, 2.0 * A))
    s = rng.uniform(0.3, 3.0)
    p = rng.uniform(0.3, 3.0)
    return TopParams(A, C, s, p)


def rand_band_roots(rng: np.random.Generator, margin: float = 0.05):
    """A generic oscillation band -1 < e1 < e2 < 1 < e3 with healthy gaps."""
    e1 = rng.uniform(-0.9, 0.6)
    e2 = rng.uniform(e1 + margin, 0.95)
    e3 = rng.uniform(1.0 + margin, 3.0)
    return e1, e2, e3


def measured_half_period(state, params: TopParams, t_max: float, dt: float = 5e-4):
    """First zero crossing of u' after the start, measured from an RK4
    trajectory with spline refinement.  The state must start at a turning
    point (u' = 0)."""
    states = simulate(state, dt, t_max, params)
    ts = np.array([st.t for st in states])
    uds = np.array([u_dot_of_state(st, params) for st in states])
    spline = CubicSpline(ts, uds)
    # Skip the initial zero; look for the next sign change.
    i0 = 5
    sgn = np.sign(uds[i0])
    for i in range(i0, len(uds) - 1):
        if np.sign(uds[i + 1]) not in (sgn, 0.0):
            return float(brentq(spline, ts[i], ts[i + 1], xtol=1e-13))
    raise RuntimeError("no turning point found within t_max")


def ode_u_of_t(state, params: TopParams, t_max: float, dt: float = 5e-4):
    """Dense spline of u(t) along an RK4 trajectory."""
    states = simulate(state, dt, t_max, params)
    ts = np.array([st.t for st in states])
    us = np.array([u_of_state(st) for st in states])
    return CubicSpline(ts, us)


def group_distance(a: SpecialUnitary, b: SpecialUnitary) -> float:
    return max(
        abs(a.alpha - b.alpha),
        abs(a.beta - b.beta),
        abs(a.gamma - b.gamma),
        abs(a.delta - b.delta),
    )
