"""Simulate the constrained top and check its three conserved quantities.

The model is a symmetric rigid body whose symmetry-axis base point slides on
a horizontal plane. The attitude lives in the unit-quaternion group (stored
as Cayley-Klein parameters alpha, beta) and the body angular momentum in its
Lie algebra. This script:

  1. builds an initial state from an attitude and an angular velocity,
  2. integrates the equations of motion with the fixed-step RK4 stepper,
  3. reports the drift of the energy h and the two momentum integrals l, n,
  4. shows that the vertical axis component u = r3 stays inside the band
     [e1, e2] predicted by the reduced cubic.

Run:  python3 demos/01_simulation_basics.py
"""

from toytop import (
    ReducedConstants,
    SpecialUnitary,
    Su2Vector,
    TopParams,
    branch_points,
    first_integrals,
    simulate,
    state_from_omega,
    u_of_state,
)

import math

params = TopParams(A=1.2, C=0.9, s=1.0, p=1.0)
# a tilted attitude: |alpha|^2 + |beta|^2 = 1
attitude = SpecialUnitary.from_alpha_beta(
    complex(math.cos(0.45), 0.1), complex(0.2, math.sqrt(1 - math.cos(0.45) ** 2 - 0.05))
)
omega = Su2Vector(0.3, -0.2, 1.4)
state = state_from_omega(attitude, omega, params)

fi0 = first_integrals(state, params)
print(f"initial integrals: h = {fi0.h:+.12f}  l = {fi0.l:+.12f}  n = {fi0.n:+.12f}")

bp = branch_points(ReducedConstants(fi0.l, fi0.n, fi0.h, params))
print(f"predicted nutation band: u in [{bp.e1:.6f}, {bp.e2:.6f}] "
      f"(outer roots e3 = {bp.e3:.6f}, e4 = {bp.e4:.6f})")

states = simulate(state, dt=1e-3, t_end=20.0, params=params)

drift = 0.0
u_min, u_max = 2.0, -2.0
for st in states:
    fi = first_integrals(st, params)
    for v0, v in zip(fi0.as_tuple(), fi.as_tuple()):
        drift = max(drift, abs(v - v0) / max(1.0, abs(v0)))
    u = u_of_state(st)
    u_min, u_max = min(u_min, u), max(u_max, u)

print(f"after t = 20 at dt = 1e-3:")
print(f"  worst relative drift of (h, l, n): {drift:.3e}")
print(f"  observed u range: [{u_min:.6f}, {u_max:.6f}]")
print(f"  band residuals: {u_min - bp.e1:+.2e} at the bottom, "
      f"{bp.e2 - u_max:+.2e} at the top")
