"""Trace the curve drawn by the top's tip on the supporting plane.

The tip of the symmetry axis projects to a planar curve c(t). With the
nutation band fixed at [0.7, 0.9] and the geometric scale s = 1, the shape
of one nutation period depends only on the third root e3 of the reduced
cubic and on the relative sign of the momenta combinations w at u = +1 and
u = -1:

  * smooth  - the angle phi advances monotonically,
  * cusp    - dphi/du vanishes exactly at a turning point,
  * loop    - phi reverses inside the band, so the curve crosses itself.

This script classifies a family of cases, traces each curve, counts the
self-intersections of the polyline, and writes one SVG per case into
demos/out/.

Run:  python3 demos/02_tip_curve_gallery.py
"""

from pathlib import Path

from toytop import (
    BranchPoints,
    TopParams,
    classify,
    constants_from_roots,
    count_self_intersections,
    loop_threshold,
    trace_curve,
)
from toytop.cli import emit_tip_svg

params = TopParams(A=1.0, C=1.0, s=1.0, p=1.0)  # gives e4^2 = 2
out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

cases = [
    # (e3, branch) with branch 2 flipping the sign of w at u = +1
    (1.1, 2),
    (1.3, 2),
    (1.85, 2),  # exactly at the loop threshold (1 - e1 e2)/(e2 - e1)
    (2.5, 2),
    (3.0, 2),
    (2.0, 0),   # same w-signs: always smooth
]

print(f"band [0.7, 0.9], loop threshold at e3 = "
      f"{loop_threshold(BranchPoints(0.7, 0.9, 2.0, params.e4)):.6g}\n")
print(f"{'e3':>6} {'branch':>6} {'kind':>8} {'crossings':>9}  output")

for e3, branch in cases:
    bp = BranchPoints(0.7, 0.9, e3, params.e4)
    consts = constants_from_roots(bp, params, branch)
    kind = classify(bp, consts).kind
    samples = trace_curve(bp, consts, params, n_periods=2, samples_per_leg=300)
    crossings = count_self_intersections(samples)
    name = f"tip_e3_{str(e3).replace('.', '_')}_branch{branch}.svg"
    path = out_dir / name
    path.write_text(emit_tip_svg(samples, {"kind": kind, "e3": e3}))
    print(f"{e3:>6g} {branch:>6d} {kind:>8} {crossings:>9d}  {path}")
