# Closed-form solutions for the degenerate root configurations of the reduced
# cubic: detection, regular precession (e1 = e2), the elliptic case e3 = e4,
# the aperiodic case e2 = e3 = 1, and the Lagrange-top limit e4 -> infinity.
#
# The degenerate curves are uniformized by Weierstrass functions.  Sheet and
# sign conventions are resolved operationally: the x-plane points a and b over
# u = -1 and u = +1 are obtained by root-finding with the derivative matched
# to the signed w-values of the motion, and the physical ray in the x-plane is
# the one along which time is real and increasing.
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import elliptic as el
from .dynamics import TopParams
from .quadrature import gauss_adaptive, sin_sq_nodes
from .reduction import BranchPoints, ReducedConstants, w_at_pm1
from .su2 import SpecialUnitary

__all__ = [
    "DegeneracyKind",
    "E3E4Solution",
    "AperiodicSolution",
    "detect",
    "precession_rates",
    "e3e4_solution",
    "e3e4_time",
    "e3e4_cayley_klein",
    "e3e4_u_of_time",
    "aperiodic_solution",
    "aperiodic_time",
    "aperiodic_cayley_klein",
    "aperiodic_x_of_time",
    "lagrange_limit_time",
]

DETECT_TOL = 1e-8


@dataclass(frozen=True)
class DegeneracyKind:
    """Which root collision (if any) is present, with the measured gap."""

    kind: str  # generic | stable_precession | aperiodic | e3_equals_e4 | lagrange_limit
    gap: float


def detect(
    bp: BranchPoints, tol: float = DETECT_TOL, lagrange_e4: float | None = None
) -> DegeneracyKind:
    """Classify the root configuration.

    The Lagrange limit is not a root collision; it fires when the caller
    supplies an e4 threshold and bp.e4 exceeds it.
    """
    gaps = {
        "stable_precession": bp.e2 - bp.e1,
        "aperiodic": bp.e3 - bp.e2,
        "e3_equals_e4": abs(bp.e4 - bp.e3),
    }
    kind, gap = min(gaps.items(), key=lambda kv: kv[1])
    if gap < tol:
        return DegeneracyKind(kind, gap)
    if lagrange_e4 is not None and bp.e4 > lagrange_e4:
        return DegeneracyKind("lagrange_limit", bp.e4 - bp.e3)
    return DegeneracyKind("generic", gap)


def precession_rates(e: float, consts: ReducedConstants) -> tuple[float, float]:
    """(precession rate of the axis about the vertical, spin rate about the axis)
    for regular precession at constant inclination u = e.

    Requires e to be a double root of the reduced cubic: both the cubic and
    its u-derivative must vanish there.
    """
    from .reduction import reduced_rhs

    if not abs(e) < 1.0:
        raise ValueError(f"|e| = {abs(e)} must be below 1")
    f = reduced_rhs(e, consts)
    h = 1e-6
    fp = (reduced_rhs(e + h, consts) - reduced_rhs(e - h, consts)) / (2.0 * h)
    if abs(f) > 1e-7 or abs(fp) > 1e-5:
        raise ValueError(
            f"u = {e} is not a double root (value {f:.2e}, slope {fp:.2e})"
        )
    A, C = consts.params.A, consts.params.C
    phi_rate = (consts.l - consts.n * e) / (A * (1.0 - e * e))
    spin_rate = consts.n / C
    return phi_rate, spin_rate


# ---------------------------------------------------------------------------
# Locating the x-plane points over u = -1 and u = +1.


def _solve_middle_segment(ctx: el.WeierstrassContext, target: float) -> complex:
    """xi with p(xi) = target on the segment omega1 + (0, omega2), where p is
    real and increases from the smallest to the middle root."""
    w2 = ctx.omega2.real

    def f(tau: float) -> float:
        return el.wp(ctx.omega1 + tau, ctx).real - target

    eps = 1e-9 * w2
    tau = brentq(f, eps, w2 - eps, xtol=1e-15)
    return ctx.omega1 + tau


def _solve_real_segment(ctx: el.WeierstrassContext, target: float) -> complex:
    """xi real in (0, omega2) with p(xi) = target; p decreases from +inf to
    the largest root."""
    w2 = ctx.omega2.real

    def f(tau: float) -> float:
        return el.wp(complex(tau), ctx).real - target

    lo = 1e-6 * w2
    while f(lo) < 0.0:
        lo *= 0.5
    tau = brentq(f, lo, w2 * (1.0 - 1e-9), xtol=1e-15)
    return complex(tau)


def _solve_upper_segment(ctx: el.WeierstrassContext, target: float) -> complex:
    """xi on omega2 + i(0, |omega1|) with p(xi) = target; p is real between the
    middle and largest roots there."""
    w2 = ctx.omega2.real
    h1 = abs(ctx.omega1.imag)

    def f(tau: float) -> float:
        return el.wp(complex(w2, -tau), ctx).real - target

    eps = 1e-9
    tau = brentq(f, eps * h1, (1.0 - eps) * h1, xtol=1e-15)
    return complex(w2, -tau)


def _match_sign(ctx: el.WeierstrassContext, xi: complex, w_target: complex) -> complex:
    """Flip xi -> -xi if needed so that p'(xi) matches the sign of w_target."""
    wp_val = el.wp_prime(xi, ctx)
    if abs(wp_val - w_target) <= abs(wp_val + w_target):
        return xi
    return -xi


# ---------------------------------------------------------------------------
# The case e3 = e4.


@dataclass(frozen=True)
class E3E4Solution:
    """Uniformized solution on the elliptic curve w^2 = 4(u-e1)(u-e2)(u+e3)."""

    ctx: el.WeierstrassContext
    bp: BranchPoints
    consts: ReducedConstants
    a: complex
    b: complex
    k1: complex
    k2: complex
    l1: complex
    l3: complex
    shift: float  # (e1 + e2 - e3) / 3
    w_p1: float  # w over u = +1 on the degenerate curve
    w_m1: float
    ray: float  # +1 or -1: physical x = -1j * ray * y, y >= 0

    @property
    def k3(self) -> complex:
        return self.k2

    @property
    def k4(self) -> complex:
        return self.k1

    @property
    def l2(self) -> complex:
        return -self.l3

    @property
    def l4(self) -> complex:
        return -self.l1


def e3e4_solution(bp: BranchPoints, consts: ReducedConstants) -> E3E4Solution:
    """Constants of the closed-form solution for e3 = e4.

    The curve degenerates to w^2 = 4(u - e1)(u - e2)(u + e3); the new w is
    2 w_old / (u - e3), which fixes the signed values over u = +-1.
    """
    params = consts.params
    if abs(bp.e4 - bp.e3) > 1e-6 * max(1.0, bp.e3):
        raise ValueError(f"e3 = {bp.e3} and e4 = {bp.e4} do not coincide")
    e1, e2, e3 = bp.e1, bp.e2, bp.e3
    ctx = el.context_from_cubic(e1, e2, -e3)
    shift = (e1 + e2 - e3) / 3.0
    wp1_old, wm1_old = w_at_pm1(bp, consts)
    w_p1 = 2.0 * wp1_old / (1.0 - e3)
    w_m1 = 2.0 * wm1_old / (-1.0 - e3)

    xi_a = _match_sign(ctx, _solve_middle_segment(ctx, -1.0 - shift), w_m1)
    xi_b = _match_sign(ctx, _solve_real_segment(ctx, 1.0 - shift), w_p1)
    a = ctx.omega2 + xi_a
    b = ctx.omega2 + xi_b

    sw2 = el.sigma_w(ctx.omega2, ctx)
    k1 = math.sqrt((1.0 + e2) / 2.0) * sw2 / el.sigma_w(a, ctx)
    k2 = 1j * math.sqrt((1.0 - e2) / 2.0) * sw2 / el.sigma_w(b, ctx)
    l1 = w_m1 / (2.0 * (-1.0 + e3)) + el.zeta_w(xi_a, ctx)
    l3 = w_p1 / (2.0 * (1.0 + e3)) + el.zeta_w(xi_b, ctx)

    sol = E3E4Solution(ctx, bp, consts, a, b, k1, k2, l1, l3, shift, w_p1, w_m1, 1.0)
    # Physical ray: the direction along the imaginary axis with t increasing.
    t_probe = e3e4_time(-1e-3j, sol)
    ray = 1.0 if t_probe.real > 0.0 else -1.0
    return E3E4Solution(ctx, bp, consts, a, b, k1, k2, l1, l3, shift, w_p1, w_m1, ray)


def e3e4_u_of_x(x: complex, sol: E3E4Solution) -> complex:
    """u as a doubly periodic function of the uniformizing variable."""
    return el.wp(x - sol.ctx.omega2, sol.ctx) + sol.shift


def e3e4_time(x: complex, sol: E3E4Solution) -> complex:
    """t(x) with t = 0 at x = 0 (u starts at the upper turning point e2)."""
    ctx = sol.ctx
    s = sol.consts.params.s
    kcap = (sol.bp.e1 + sol.bp.e2 + 2.0 * sol.bp.e3) / 3.0
    if x == 0:
        return 0.0j
    return (
        1j
        * math.sqrt(2.0 * s)
        * (el.zeta_w(x - ctx.omega2, ctx) + ctx.eta2 - kcap * x)
    )


def e3e4_cayley_klein(x: complex, sol: E3E4Solution) -> SpecialUnitary:
    """Closed-form attitude at the uniformizing variable x.

    The sigma-quotient forms give the A = C attitude; for A != C the
    constant-rate rotation about the top's axis is appended, exactly as in
    the generic quadrature path.
    """
    ctx = sol.ctx
    w2 = ctx.omega2

    def sq(num_shift: complex, den_shift: complex) -> complex:
        return el.sigma_w(x - num_shift, ctx) / el.sigma_w(x - den_shift, ctx)

    alpha = sol.k1 * cmath.exp(sol.l1 * x) * sq(sol.a, w2)
    beta = sol.k2 * cmath.exp(sol.l2 * x) * sq(-sol.b, -w2)
    gamma = sol.k3 * cmath.exp(sol.l3 * x) * sq(sol.b, w2)
    delta = sol.k4 * cmath.exp(sol.l4 * x) * sq(-sol.a, -w2)
    phi = SpecialUnitary(alpha, beta, gamma, delta)

    params = sol.consts.params
    if params.A != params.C:
        tau = (1.0 / params.C - 1.0 / params.A) * sol.consts.n
        t = e3e4_time(x, sol)
        rot = SpecialUnitary(
            cmath.exp(0.5j * tau * t), 0.0j, 0.0j, cmath.exp(-0.5j * tau * t)
        )
        phi = phi @ rot
    return phi


def e3e4_u_of_time(t: float, sol: E3E4Solution) -> tuple[float, complex]:
    """(u, x) at a given (real, nonnegative) time along the physical motion.

    Inverts the monotone map y -> t(-i ray y) over one or more half-periods
    of the nutation.
    """
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return sol.bp.e2, 0.0j

    def t_of_y(y: float) -> float:
        return e3e4_time(-1j * sol.ray * y, sol).real

    hi = abs(sol.ctx.omega1.imag)
    while t_of_y(hi) < t:
        hi *= 2.0
    y = brentq(lambda yy: t_of_y(yy) - t, 0.0, hi, xtol=1e-14)
    x = -1j * sol.ray * y
    return float(e3e4_u_of_x(x, sol).real), x


# ---------------------------------------------------------------------------
# The aperiodic case e2 = e3 = 1.


@dataclass(frozen=True)
class AperiodicSolution:
    """Uniformized solution on the curve w^2 = 4(u - e1)(u^2 - e4^2).

    The motion starts at the lower turning point u = e1 at t = x = 0 and
    approaches u = 1 in infinite time; the point b over u = +1 lies on the
    physical ray, where the time formula's logarithm diverges.
    """

    ctx: el.WeierstrassContext
    bp: BranchPoints
    consts: ReducedConstants
    a: complex
    b: complex
    k: complex
    l: complex
    p_exp: complex  # branch exponent w_{-1} / (2 p'(b - omega3)), imaginary
    w_p1: complex
    w_m1: float
    y_b: float  # the physical ray is x = i ray y, 0 <= y < y_b
    ray: float = 1.0

    def log_branch(self, x: complex) -> complex:
        """log(sigma(x+b)/sigma(x-b)) on the branch continuous along the
        physical path with value i pi at x = 0."""
        ctx = self.ctx
        steps = 48
        val = 1j * math.pi
        prev_q = -1.0 + 0.0j  # sigma(b)/sigma(-b) = -1 exactly
        for k in range(1, steps + 1):
            z = x * (k / steps)
            q = el.sigma_w(z + self.b, ctx) / el.sigma_w(z - self.b, ctx)
            val += cmath.log(q / prev_q)
            prev_q = q
        return val


def aperiodic_solution(bp: BranchPoints, consts: ReducedConstants) -> AperiodicSolution:
    """Constants of the closed-form solution for e2 = e3 = 1.

    b is placed on the physical ray itself (u reaches 1 there in infinite
    time); with that convention the branch exponent is w_{-1}/(2 p'(b-w3))
    and the linear constant carries the antisymmetric combination
    zeta(a+b) - zeta(a-b).  Both choices mirror the published ones, which
    refer to the opposite sheet over u = +1; the forms used here are fixed
    by matching the logarithmic differential of alpha along the motion.
    """
    if abs(bp.e2 - 1.0) > 1e-6 or abs(bp.e3 - 1.0) > 1e-6:
        raise ValueError(f"e2 = {bp.e2}, e3 = {bp.e3}: not the aperiodic case")
    e1, e4 = bp.e1, bp.e4
    ctx = el.context_from_cubic(e1, e4, -e4)
    shift = e1 / 3.0
    w3 = ctx.omega3

    # w on the degenerate curve is -2 w_old / (u - 1); over u = -1 this gives
    # w_old(-1) itself, which is real.
    _, wm1_old = w_at_pm1(bp, consts)
    w_m1 = wm1_old

    xi_a = _match_sign(ctx, _solve_middle_segment(ctx, -1.0 - shift), w_m1)
    a = w3 + xi_a

    xi_b = _solve_upper_segment(ctx, 1.0 - shift)
    y_b = abs(((w3 + xi_b) - _nearest_lattice(w3 + xi_b, ctx)).imag)
    k = math.sqrt((1.0 + e1) / 2.0) * el.sigma_w(w3, ctx) / el.sigma_w(a, ctx)

    # The physical ray is the direction along the imaginary axis with time
    # real and increasing; probe both.
    for ray in (1.0, -1.0):
        b = 1j * ray * y_b
        w_p1 = el.wp_prime(b - w3, ctx)
        p_exp = w_m1 / (2.0 * w_p1)
        l = (
            w_m1 / 4.0
            - w_m1 / (1.0 - e4 * e4)
            + el.zeta_w(xi_a, ctx)
            - p_exp * (el.zeta_w(a + b, ctx) - el.zeta_w(a - b, ctx))
        )
        sol = AperiodicSolution(
            ctx, bp, consts, a, b, k, l, p_exp, w_p1, w_m1, y_b, ray
        )
        if aperiodic_time(1j * ray * 0.25 * y_b, sol).real > 0.0:
            return sol
    raise RuntimeError("no ray direction yields increasing time")


def _nearest_lattice(z: complex, ctx: el.WeierstrassContext) -> complex:
    w1, w2 = 2.0 * ctx.omega1, 2.0 * ctx.omega2
    det = w1.real * w2.imag - w1.imag * w2.real
    m = round((z.real * w2.imag - z.imag * w2.real) / det)
    n = round((w1.real * z.imag - w1.imag * z.real) / det)
    return m * w1 + n * w2


def aperiodic_u_of_x(x: complex, sol: AperiodicSolution) -> complex:
    return el.wp(x - sol.ctx.omega3, sol.ctx) + sol.bp.e1 / 3.0


def aperiodic_time(x: complex, sol: AperiodicSolution) -> complex:
    """t(x) with t = 0 at x = 0; diverges logarithmically as x approaches b."""
    ctx = sol.ctx
    s = sol.consts.params.s
    e1, e4 = sol.bp.e1, sol.bp.e4
    if x == 0:
        return 0.0j
    w3 = ctx.omega3
    zeta_w3 = ctx.eta3
    log_term = sol.log_branch(x)  # log(sigma(x+b)/sigma(x-b)), continuous
    # log(-sigma(x-b)/sigma(x+b)) on the branch vanishing at x = 0:
    log_m = 1j * math.pi - log_term
    core = (
        -el.zeta_w(x - w3, ctx)
        - zeta_w3
        + (1.0 + e1 / 3.0) * x
        + (1.0 - e4 * e4)
        / sol.w_p1
        * (log_m + 2.0 * (zeta_w3 + el.zeta_w(sol.b - w3, ctx)) * x)
    )
    return 1j * math.sqrt(2.0 * s) * core


def aperiodic_cayley_klein(x: complex, sol: AperiodicSolution) -> SpecialUnitary:
    """Closed-form attitude for the aperiodic motion (A = C form; for A != C
    the constant axial rotation over t(x) is appended)."""
    ctx = sol.ctx
    w3 = ctx.omega3
    p = sol.p_exp
    log_term = sol.log_branch(x)
    power_plus = cmath.exp(p * log_term)  # (sigma(x+b)/sigma(x-b))^p
    alpha = (
        sol.k
        * cmath.exp(sol.l * x - 1j * math.pi * p)
        * el.sigma_w(x - sol.a, ctx)
        / el.sigma_w(x - w3, ctx)
        * power_plus
    )
    delta = (
        sol.k
        * cmath.exp(-sol.l * x + 1j * math.pi * p)
        * el.sigma_w(x + sol.a, ctx)
        / el.sigma_w(x + w3, ctx)
        / power_plus
    )
    u = aperiodic_u_of_x(x, sol)
    beta = 1j * cmath.sqrt((1.0 - u) / 2.0)
    phi = SpecialUnitary(alpha, beta, beta, delta)

    params = sol.consts.params
    if params.A != params.C:
        tau = (1.0 / params.C - 1.0 / params.A) * sol.consts.n
        t = aperiodic_time(x, sol)
        rot = SpecialUnitary(
            cmath.exp(0.5j * tau * t), 0.0j, 0.0j, cmath.exp(-0.5j * tau * t)
        )
        phi = phi @ rot
    return phi


def aperiodic_x_of_time(t: float, sol: AperiodicSolution) -> complex:
    """The point on the physical ray x = i y reached at (real) time t >= 0."""
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return 0.0j

    def t_of_y(y: float) -> float:
        return aperiodic_time(1j * sol.ray * y, sol).real

    # Walk toward y_b (where t diverges) until the target is bracketed.
    hi = 0.5 * sol.y_b
    while t_of_y(hi) < t:
        hi = sol.y_b - 0.5 * (sol.y_b - hi)
        if sol.y_b - hi < 1e-13 * sol.y_b:
            raise ValueError(f"time {t} is beyond the resolvable approach to u = 1")
    y = brentq(lambda yy: t_of_y(yy) - t, 0.0, hi, xtol=1e-14)
    return 1j * sol.ray * y


# ---------------------------------------------------------------------------
# The Lagrange-top limit e4 -> infinity with A/p fixed.


def lagrange_limit_time(
    u_from: float,
    u_to: float,
    e1: float,
    e2: float,
    e3: float,
    A: float,
    p: float,
) -> float:
    """Elapsed time sqrt(A/2p) * integral of du/sqrt((u-e1)(u-e2)(u-e3)) over
    [u_from, u_to], a sub-leg of the nutation band [e1, e2]."""
    if not (e1 < e2 < e3):
        raise ValueError("roots must satisfy e1 < e2 < e3")
    lo, hi = min(u_from, u_to), max(u_from, u_to)
    if lo < e1 - 1e-12 or hi > e2 + 1e-12:
        raise ValueError(f"[{lo}, {hi}] leaves the nutation band [{e1}, {e2}]")

    def integrand(theta):
        u, _ = sin_sq_nodes(e1, e2, theta)
        return 2.0 / np.sqrt(e3 - u)

    th = [
        math.asin(math.sqrt(min(max((v - e1) / (e2 - e1), 0.0), 1.0)))
        for v in (lo, hi)
    ]
    return math.sqrt(A / (2.0 * p)) * float(gauss_adaptive(integrand, th[0], th[1]))
