"""Exercise the closed-form solutions at degenerate root configurations.

Away from degeneracies the nutation variable u(t) needs numerical
quadrature, but three special root patterns admit elementary or elliptic
closed forms. Each one is compared against the RK4 integrator:

  1. e1 = e2: regular precession at constant inclination, with explicit
     precession and spin rates.
  2. e3 = e4: the outer roots collide and u(t) reduces to a Weierstrass
     elliptic expression on a genus-one curve.
  3. e2 = e3 = 1: the aperiodic trajectory that approaches the upright
     position asymptotically and never reaches it.

Run:  python3 demos/03_closed_forms.py
"""

import math

import numpy as np

from toytop import (
    BranchPoints,
    TopParams,
    aperiodic_solution,
    aperiodic_u_of_x,
    aperiodic_x_of_time,
    constants_from_roots,
    detect,
    e3e4_solution,
    e3e4_u_of_time,
    nutation_half_period,
    precession_rates,
    simulate,
    turning_point_state,
    u_of_state,
)

# --- 1. regular precession (double inner root) -----------------------------
params = TopParams(1.0, 0.8, 1.0, 1.0)
e = 0.55
bp = BranchPoints(e, e, 1.9, params.e4)
consts = constants_from_roots(bp, params, 0)
print(f"case 1: {detect(bp).kind} at u = {e}")
prec, spin = precession_rates(e, consts)
states = simulate(turning_point_state(bp, consts), 1e-3, 3.0, params)
dev = max(abs(u_of_state(s) - e) for s in states)
print(f"  precession rate {prec:+.6f}, spin rate {spin:+.6f}")
print(f"  ODE inclination deviation over t = 3: {dev:.2e}\n")

# --- 2. outer-root collision e3 = e4 ---------------------------------------
e3 = math.sqrt(2.0)
A = e3 * e3 - 1.0  # with s = p = 1 this forces e4 = e3
params = TopParams(A, A, 1.0, 1.0)
bp = BranchPoints(0.2, 0.8, e3, params.e4)
consts = constants_from_roots(bp, params, 0)
print(f"case 2: {detect(bp).kind} (e3 = e4 = {e3:.6f})")
sol = e3e4_solution(bp, consts)
period = 2.0 * nutation_half_period(bp, params)
states = simulate(turning_point_state(bp, consts, upper=True), 5e-4, period, params)
worst = 0.0
for st in states[:: len(states) // 30]:
    u_cf, _ = e3e4_u_of_time(st.t, sol)
    worst = max(worst, abs(u_cf - u_of_state(st)))
print(f"  nutation period {period:.6f}")
print(f"  max |u_closed_form - u_ode| over one period: {worst:.2e}\n")

# --- 3. aperiodic approach to the upright position -------------------------
params = TopParams(1.1, 1.1, 1.2, 0.8)
bp = BranchPoints(0.3, 1.0, 1.0, params.e4)
consts = constants_from_roots(bp, params, 0)
print(f"case 3: {detect(bp).kind} (e2 = e3 = 1)")
sol = aperiodic_solution(bp, consts)
states = simulate(turning_point_state(bp, consts), 5e-4, 12.0, params)
print(f"  {'t':>6} {'u_closed_form':>15} {'u_ode':>15} {'1 - u':>10}")
for t in (0.0, 2.0, 5.0, 9.0, 12.0):
    idx = min(range(len(states)), key=lambda i: abs(states[i].t - t))
    u_cf = float(aperiodic_u_of_x(aperiodic_x_of_time(t, sol), sol).real)
    u_ode = u_of_state(states[idx])
    print(f"  {t:>6.1f} {u_cf:>15.10f} {u_ode:>15.10f} {1 - u_ode:>10.2e}")
print("  u climbs toward 1 but never crosses it")
