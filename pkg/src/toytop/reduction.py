# The reduced one-degree-of-freedom system: the cubic right-hand side,
# branch points e1 <= e2 <= 1 <= e3 (plus e4 = sqrt(1 + A/(ps))), recovery of
# (l, n, h) from roots, the quintic R(u) of the curve w^2 = R(u), and real-path
# quadrature of the time and Cayley-Klein integrals.
#
# Sign convention for w on a monotone u-leg: w = i * sign(u') * sqrt(-R(u)),
# which makes dt = -i sqrt(s/2) (u^2 - e4^2) du / w real and positive along
# physical motion.
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cubic import real_roots_monic
from .dynamics import TopParams
from .quadrature import gauss_adaptive, sin_sq_nodes
from .su2 import SpecialUnitary

__all__ = [
    "BranchPoints",
    "ReducedConstants",
    "InfeasibleConstantsError",
    "DegenerateRootsError",
    "reduced_rhs",
    "branch_points",
    "constants_from_roots",
    "matching_branch",
    "r_poly",
    "w_at_pm1",
    "turning_point_state",
    "nutation_half_period",
    "leg_time",
    "cayley_klein_quadrature",
]

DEGENERACY_TOL = 1e-8


class InfeasibleConstantsError(ValueError):
    """The first integrals admit no physical motion (cubic < 0 on [-1, 1])."""


class DegenerateRootsError(ValueError):
    """Coalescing branch points; the generic quadrature path refuses them.

    Use the closed forms in toytop.degenerate instead.
    """


@dataclass(frozen=True)
class ReducedConstants:
    l: float
    n: float
    h: float
    params: TopParams


@dataclass(frozen=True)
class BranchPoints:
    e1: float
    e2: float
    e3: float
    e4: float
    sign_w_plus: int = 1  # sign of w over u = +1 (branch of the curve)
    sign_w_minus: int = 1  # sign of w over u = -1

    def __post_init__(self):
        tol = 1e-9 * max(1.0, abs(self.e3))
        if not (-1.0 - tol <= self.e1 <= self.e2 <= 1.0 + tol <= self.e3 + 2 * tol):
            raise ValueError(
                f"roots must satisfy -1 <= e1 <= e2 <= 1 <= e3, got "
                f"({self.e1}, {self.e2}, {self.e3})"
            )
        if self.e4 <= 1.0:
            raise ValueError(f"e4 = {self.e4} must exceed 1")


def reduced_rhs(u: float, consts: ReducedConstants) -> float:
    """(1/p)(1-u^2)(h - n^2/(2C) - p u) - (1/(2Ap))(l - n u)^2.

    A monic cubic in u; equals (u - e1)(u - e2)(u - e3).
    """
    A, C, p = consts.params.A, consts.params.C, consts.params.p
    l, n, h = consts.l, consts.n, consts.h
    return (1.0 / p) * (1.0 - u * u) * (h - n * n / (2.0 * C) - p * u) - (
        l - n * u
    ) ** 2 / (2.0 * A * p)


def _cubic_coeffs(consts: ReducedConstants) -> tuple[float, float, float]:
    """Coefficients (b, c, d) of the monic form u^3 + b u^2 + c u + d."""
    A, C, p = consts.params.A, consts.params.C, consts.params.p
    l, n, h = consts.l, consts.n, consts.h
    ht = h - n * n / (2.0 * C)
    b = -ht / p - n * n / (2.0 * A * p)
    c = -1.0 + l * n / (A * p)
    d = ht / p - l * l / (2.0 * A * p)
    return b, c, d


def branch_points(consts: ReducedConstants) -> BranchPoints:
    """Roots of the reduced cubic, ordered -1 <= e1 <= e2 <= 1 <= e3."""
    params = consts.params
    roots = real_roots_monic(*_cubic_coeffs(consts))
    if len(roots) < 3:
        raise InfeasibleConstantsError(
            "reduced cubic has a single real root; constants are not feasible"
        )
    e1, e2, e3 = roots
    tol = 1e-7 * max(1.0, abs(e3))
    if not (-1.0 - tol <= e1 and e2 <= 1.0 + tol and e3 >= 1.0 - tol):
        raise InfeasibleConstantsError(
            f"roots {roots} do not bracket a physical interval in [-1, 1]"
        )
    e1 = min(max(e1, -1.0), 1.0)
    e2 = min(max(e2, -1.0), 1.0)
    e3 = max(e3, 1.0)
    # Signs follow the w_at_pm1 convention (w_{+-1} proportional to -(l -+ n)).
    sp = 1 if consts.n - consts.l >= 0.0 else -1
    sm = 1 if -(consts.l + consts.n) >= 0.0 else -1
    return BranchPoints(e1, e2, e3, params.e4, sp, sm)


def constants_from_roots(
    bp: BranchPoints, params: TopParams, branch: int = 0
) -> ReducedConstants:
    """One of the (up to) four (l, n, h) triples producing the given roots.

    Branches 0..3 are (a, b), (-a, -b), (b, a), (-b, -a) in the (l, n) plane.
    When e2 = 1 (or e1 = -1) only branches 0 and 1 remain.
    """
    e1, e2, e3 = bp.e1, bp.e2, bp.e3
    A, C, p = params.A, params.C, params.p
    dsq = -2.0 * A * p * (1.0 - e1) * (1.0 - e2) * (1.0 - e3)
    ssq = -2.0 * A * p * (-1.0 - e1) * (-1.0 - e2) * (-1.0 - e3)
    d = math.sqrt(max(0.0, dsq))  # |l - n|
    s_ = math.sqrt(max(0.0, ssq))  # |l + n|
    degenerate = d < 1e-12 or s_ < 1e-12
    if degenerate and branch not in (0, 1):
        raise ValueError(
            "only two branches exist when a root lies at +1 or -1"
        )
    if branch == 0:
        diff, tot = d, s_
    elif branch == 1:
        diff, tot = -d, -s_
    elif branch == 2:
        diff, tot = -d, s_
    elif branch == 3:
        diff, tot = d, -s_
    else:
        raise ValueError(f"branch must be 0..3, got {branch}")
    l = 0.5 * (tot + diff)
    n = 0.5 * (tot - diff)
    h = -p * e1 * e2 * e3 + n * n / (2.0 * C) + l * l / (2.0 * A)
    return ReducedConstants(l, n, h, params)


def matching_branch(consts: ReducedConstants, bp: BranchPoints) -> int:
    """Branch index whose (l, n) reproduces the given constants."""
    for branch in range(4):
        try:
            cand = constants_from_roots(bp, consts.params, branch)
        except ValueError:
            continue
        if abs(cand.l - consts.l) < 1e-6 * max(1.0, abs(consts.l)) and abs(
            cand.n - consts.n
        ) < 1e-6 * max(1.0, abs(consts.n)):
            return branch
    raise ValueError("no branch matches the given constants")


def r_poly(u, bp: BranchPoints):
    """R(u) = (u - e1)(u - e2)(u - e3)(u^2 - e4^2) of the curve w^2 = R(u)."""
    return (u - bp.e1) * (u - bp.e2) * (u - bp.e3) * (u * u - bp.e4**2)


def w_at_pm1(bp: BranchPoints, consts: ReducedConstants) -> tuple[float, float]:
    """Canonical signed values of w over u = +1 and u = -1.

    The magnitude is sqrt(s/2) |l -+ n| / (p s); the overall sign is fixed so
    that the third-kind integrals for the Cayley-Klein parameters propagate
    the attitude along physical motion with the dt-positive branch
    w = i sign(u') sqrt(-R(u)).  (This is the mirror of the sign linkage one
    might read off naively; only relative signs matter for classification.)
    """
    p, s = consts.params.p, consts.params.s
    c = -math.sqrt(s / 2.0) / (p * s)
    return c * (consts.l - consts.n), c * (consts.l + consts.n)


def turning_point_state(bp: BranchPoints, consts: ReducedConstants, upper: bool = False):
    """Canonical unreduced state at a turning point of u (u' = 0).

    The attitude is chosen with alpha real positive and beta purely
    imaginary, which puts the axis at r = (0, -sqrt(1-e^2), e); the angular
    velocity splits into the axial rate n/C and the vertical precession rate
    (l - n e) / (A (1 - e^2)).  The state reproduces (h, l, n) exactly.
    """
    from .dynamics import state_from_omega
    from .su2 import Su2Vector

    params = consts.params
    e = bp.e2 if upper else bp.e1
    if abs(e) >= 1.0 - 1e-14:
        raise DegenerateRootsError("turning point on the vertical axis")
    a0 = math.sqrt((1.0 + e) / 2.0)
    b0 = 1j * math.sqrt((1.0 - e) / 2.0)
    phi = SpecialUnitary.from_alpha_beta(complex(a0), b0)
    se = math.sqrt(1.0 - e * e)
    prec = (consts.l - consts.n * e) / (params.A * (1.0 - e * e))
    ax = consts.n / params.C - prec * e
    omega = Su2Vector(0.0, -ax * se, ax * e + prec)
    return state_from_omega(phi, omega, params)


def nutation_half_period(bp: BranchPoints, params: TopParams) -> float:
    """Time for u to travel from e1 to e2 (the hyperelliptic time integral).

    Endpoint singularities are removed by u = e1 + (e2 - e1) sin^2(theta).
    """
    e1, e2, e3, e4 = bp.e1, bp.e2, bp.e3, bp.e4
    if e2 - e1 < DEGENERACY_TOL:
        raise DegenerateRootsError("e1 = e2: regular precession has no nutation")

    def integrand(theta):
        u, du = sin_sq_nodes(e1, e2, theta)
        su, cu = np.sin(theta), np.cos(theta)
        # du / sqrt((u - e1)(e2 - u)) = 2 dtheta
        return 2.0 * np.sqrt(
            params.s * (e4 * e4 - u * u) / (2.0 * (e3 - u))
        )

    return float(gauss_adaptive(integrand, 0.0, 0.5 * np.pi, rtol=1e-12))


def _leg_check(bp: BranchPoints, u_from: float, u_to: float) -> None:
    e1, e2 = bp.e1, bp.e2
    if e2 - e1 < DEGENERACY_TOL:
        raise DegenerateRootsError("degenerate oscillation band")
    lo, hi = min(u_from, u_to), max(u_from, u_to)
    tol = 1e-12
    if lo < e1 - tol or hi > e2 + tol:
        raise ValueError(f"u-leg [{lo}, {hi}] leaves the band [{e1}, {e2}]")


def _theta_of_u(bp: BranchPoints, u: float) -> float:
    x = (u - bp.e1) / (bp.e2 - bp.e1)
    return math.asin(math.sqrt(min(max(x, 0.0), 1.0)))


def leg_time(bp: BranchPoints, params: TopParams, u_from: float, u_to: float) -> float:
    """Elapsed (positive) time while u moves monotonically from u_from to u_to."""
    _leg_check(bp, u_from, u_to)
    e1, e2, e3, e4 = bp.e1, bp.e2, bp.e3, bp.e4

    def integrand(theta):
        u, _ = sin_sq_nodes(e1, e2, theta)
        return 2.0 * np.sqrt(params.s * (e4 * e4 - u * u) / (2.0 * (e3 - u)))

    t0, t1 = _theta_of_u(bp, u_from), _theta_of_u(bp, u_to)
    lo, hi = min(t0, t1), max(t0, t1)
    return float(gauss_adaptive(integrand, lo, hi, rtol=1e-12))


def cayley_klein_quadrature(
    bp: BranchPoints,
    consts: ReducedConstants,
    u_from: float,
    u_to: float,
    start: SpecialUnitary,
    rtol: float = 1e-12,
) -> SpecialUnitary:
    """Propagate the attitude along one monotone u-leg via the third-kind
    integrals for log alpha .. log delta.

    The core quadrature is the A = C (spherical) solution; for A != C the
    constant-speed axial rotation with rate tau = (1/C - 1/A) n is applied
    over the leg's elapsed time.
    """
    _leg_check(bp, u_from, u_to)
    params = consts.params
    e1, e2, e3, e4 = bp.e1, bp.e2, bp.e3, bp.e4
    wp1, wm1 = w_at_pm1(bp, consts)
    sign_du = 1.0 if u_to >= u_from else -1.0
    if abs(1.0 - e2) < 1e-12 and abs(wp1) > 1e-12:
        raise ValueError("path endpoint at u = 1 with nonzero residue")
    if abs(-1.0 - e1) < 1e-12 and abs(wm1) > 1e-12:
        raise ValueError("path endpoint at u = -1 with nonzero residue")

    def log_derivs(theta):
        u, du = sin_sq_nodes(e1, e2, theta)
        # w = i * sign(u') * sqrt(-R(u)); on the theta-grid
        # sqrt(-R) = (e2-e1) sin cos sqrt((e3-u)(e4^2-u^2)) absorbs du's zeros.
        tail = np.sqrt((e3 - u) * (e4 * e4 - u * u))
        # du/w restricted to the leg, as a function of theta:
        du_over_w = -1j * sign_du * 2.0 / tail
        rat = (u * u - e4 * e4) / (1.0 - e4 * e4)
        w_theta = 1j * sign_du * (e2 - e1) * np.sin(theta) * np.cos(theta) * tail
        dla = (w_theta + rat * wm1) / (2.0 * (u + 1.0)) * du_over_w
        dlb = (w_theta - rat * wp1) / (2.0 * (u - 1.0)) * du_over_w
        dlc = (w_theta + rat * wp1) / (2.0 * (u - 1.0)) * du_over_w
        dld = (w_theta - rat * wm1) / (2.0 * (u + 1.0)) * du_over_w
        return dla, dlb, dlc, dld

    t0, t1 = _theta_of_u(bp, u_from), _theta_of_u(bp, u_to)
    lo, hi = min(t0, t1), max(t0, t1)
    # The theta-integral runs lo -> hi; the oriented path integral carries an
    # extra sign for down-legs (theta traversed hi -> lo).
    ints = [
        sign_du * gauss_adaptive(lambda th, i=i: log_derivs(th)[i], lo, hi, rtol=rtol)
        for i in range(4)
    ]
    alpha = start.alpha * cmath.exp(ints[0])
    beta = start.beta * cmath.exp(ints[1])
    gamma = start.gamma * cmath.exp(ints[2])
    delta = start.delta * cmath.exp(ints[3])
    phi = SpecialUnitary(alpha, beta, gamma, delta)

    if params.A != params.C:
        tau = (1.0 / params.C - 1.0 / params.A) * consts.n
        dt = leg_time(bp, params, u_from, u_to)
        rot = SpecialUnitary(
            cmath.exp(0.5j * tau * dt), 0.0j, 0.0j, cmath.exp(-0.5j * tau * dt)
        )
        phi = phi @ rot
    phi.check(1e-6)
    return phi
