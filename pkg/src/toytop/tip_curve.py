# The planar curve traced by the tip of the top: the point c = 2 s alpha beta,
# its polar form rho e^{i phi} with rho = s sqrt(1 - u^2), the differential
# dphi/du, the smooth/cusp/loop classifier, and sampled curve generation.
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import TopParams
from .quadrature import gauss_adaptive, sin_sq_nodes
from .reduction import (
    BranchPoints,
    DegenerateRootsError,
    ReducedConstants,
    leg_time,
    w_at_pm1,
)
from .su2 import SpecialUnitary

__all__ = [
    "TipSample",
    "TipClass",
    "tip_point",
    "dphi_du",
    "classify",
    "trace_curve",
    "loop_threshold",
    "count_self_intersections",
]

CUSP_TOL = 1e-9


@dataclass(frozen=True)
class TipSample:
    """One point of the tip curve: time, inclination cosine, polar and
    cartesian plane coordinates (phi is unwrapped)."""

    t: float
    u: float
    rho: float
    phi: float
    c: complex


@dataclass(frozen=True)
class TipClass:
    """Qualitative shape of the tip curve between turning points."""

    kind: str  # smooth | cusp | loop
    threshold: float  # (1 - e1 e2) / (e2 - e1), compared against e3


def tip_point(phi_state: SpecialUnitary, s: float) -> complex:
    """Plane position of the tip, c = 2 s alpha beta (the projection of -s r)."""
    return 2.0 * s * phi_state.alpha * phi_state.beta


def loop_threshold(bp: BranchPoints) -> float:
    """(1 - e1 e2) / (e2 - e1); loops occur iff this lies below e3 (for
    opposite w-signs over u = +-1)."""
    if bp.e2 - bp.e1 <= 0.0:
        raise DegenerateRootsError("e1 = e2: the tip traces a circle")
    return (1.0 - bp.e1 * bp.e2) / (bp.e2 - bp.e1)


def dphi_du(u, bp: BranchPoints, w_pm: tuple[float, float], sign_du: float = 1.0):
    """dphi/du along a monotone leg of the motion.

    The polar angle of the tip advances by the imaginary part of
    dlog(alpha) + dlog(beta); on the real path this reduces to
    (1/2) (u^2 - e4^2)/(1 - e4^2) (w_m1/(u+1) - w_p1/(u-1)) / w with
    w = i sign(u') sqrt(-R(u)).
    """
    u = np.asarray(u, dtype=float)
    e1, e2, e3, e4 = bp.e1, bp.e2, bp.e3, bp.e4
    wp1, wm1 = w_pm
    inside = (u > e1) & (u < e2)
    if not np.all(inside):
        raise ValueError("dphi/du needs e1 < u < e2 strictly (w = 0 at turning points)")
    neg_r = (u - e1) * (e2 - u) * (e3 - u) * (e4 * e4 - u * u)
    rat = (u * u - e4 * e4) / (1.0 - e4 * e4)
    # Im(du / w) = -sign(u') du / sqrt(-R); the w-proportional parts of the
    # logarithmic differentials are real and drop out of dphi.
    return -0.5 * sign_du * rat * (wm1 / (u + 1.0) - wp1 / (u - 1.0)) / np.sqrt(neg_r)


def classify(bp: BranchPoints, consts: ReducedConstants, tol: float = CUSP_TOL) -> TipClass:
    """Smooth, cusped or looped, per the sign pattern of w over u = +-1 and
    the threshold (1 - e1 e2)/(e2 - e1) against e3."""
    if abs(bp.e1) >= 1.0 or abs(bp.e2) >= 1.0:
        raise ValueError("classification requires -1 < e1 and e2 < 1")
    wp1, wm1 = w_at_pm1(bp, consts)
    thr = loop_threshold(bp)
    if wp1 * wm1 > 0.0:
        return TipClass("smooth", thr)
    if abs(thr - bp.e3) <= tol * max(1.0, abs(bp.e3)):
        return TipClass("cusp", thr)
    if thr < bp.e3:
        return TipClass("loop", thr)
    return TipClass("smooth", thr)


def _leg_phi_advance(bp, w_pm, u_from: float, u_to: float, sign_du: float) -> float:
    """Integral of dphi/du over one monotone leg, in the sin^2 parameter.

    The sign of dphi/du flips with the leg orientation and so does the
    direction of integration, so the advance is orientation-free; working in
    theta keeps sqrt((u - e1)(e2 - u)) = (e2 - e1) sin(theta) cos(theta)
    exact near the turning points.
    """
    e1, e2, e3, e4 = bp.e1, bp.e2, bp.e3, bp.e4
    wp1, wm1 = w_pm

    def integrand(theta):
        u, _ = sin_sq_nodes(e1, e2, theta)
        rat = (u * u - e4 * e4) / (1.0 - e4 * e4)
        return -rat * (wm1 / (u + 1.0) - wp1 / (u - 1.0)) / np.sqrt(
            (e3 - u) * (e4 * e4 - u * u)
        )

    th = [
        math.asin(math.sqrt(min(max((v - e1) / (e2 - e1), 0.0), 1.0)))
        for v in (u_from, u_to)
    ]
    lo, hi = min(th), max(th)
    return float(gauss_adaptive(integrand, lo, hi, rtol=1e-12))


def trace_curve(
    bp: BranchPoints,
    consts: ReducedConstants,
    params: TopParams,
    n_periods: int = 1,
    samples_per_leg: int = 200,
    phi0: float = 0.0,
    start_at_top: bool = False,
) -> list[TipSample]:
    """Sample the tip curve over whole nutation periods.

    By default the trace starts at the lower turning point u = e1 on an
    up-leg, so that the near-apex loop (when present) lies wholly inside one
    period and a single period shows its self-intersection.  phi is
    accumulated by quadrature of dphi/du per monotone leg (robust when rho
    approaches zero), and t by the leg time quadrature.
    """
    if n_periods < 1 or samples_per_leg < 2:
        raise ValueError("need at least one period and two samples per leg")
    e1, e2 = bp.e1, bp.e2
    if e2 - e1 < 1e-8:
        raise DegenerateRootsError("degenerate oscillation band")
    w_pm = w_at_pm1(bp, consts)
    s = params.s

    # The turning points themselves are only used as integration limits; the
    # quadrature nodes stay strictly inside the band, where w is nonzero.
    grid_down = np.linspace(e2, e1, samples_per_leg + 1)
    grid_up = grid_down[::-1]
    legs = (
        ((grid_down, -1.0), (grid_up, 1.0))
        if start_at_top
        else ((grid_up, 1.0), (grid_down, -1.0))
    )

    samples: list[TipSample] = []

    def emit(t: float, u: float, phi: float) -> None:
        rho = s * math.sqrt(max(0.0, 1.0 - u * u))
        samples.append(TipSample(t, u, rho, phi, rho * complex(math.cos(phi), math.sin(phi))))

    t_acc, phi_acc = 0.0, phi0
    emit(t_acc, e2 if start_at_top else e1, phi_acc)
    for _ in range(n_periods):
        for grid, sign_du in legs:
            u_prev = grid[0]
            for u in grid[1:]:
                phi_acc += _leg_phi_advance(bp, w_pm, u_prev, float(u), sign_du)
                t_acc += leg_time(bp, params, u_prev, float(u))
                emit(t_acc, float(u), phi_acc)
                u_prev = float(u)
    return samples


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def count_self_intersections(samples: list[TipSample], local_only: bool = True) -> int:
    """Proper crossings of the sampled polyline (adjacent segments excluded).

    With local_only (the default) only crossings whose two strands carry the
    same unwrapped phi (difference below pi) are counted: these are the loops
    of the curve's shape between turning points.  Crossings whose strands
    differ by full turns merely record that the net phi advance exceeds 2 pi,
    which any rosette exhibits when traced long enough and which says nothing
    about the loop/cusp/smooth kind.
    """
    pts = [smp.c for smp in samples]
    phis = [smp.phi for smp in samples]
    count = 0
    n = len(pts) - 1
    for i in range(n):
        for j in range(i + 2, n):
            if not _segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]):
                continue
            if local_only:
                dphi = abs(
                    0.5 * (phis[i] + phis[i + 1]) - 0.5 * (phis[j] + phis[j + 1])
                )
                if dphi >= math.pi:
                    continue
            count += 1
    return count
