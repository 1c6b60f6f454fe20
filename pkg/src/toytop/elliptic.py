# Weierstrass special-function kernel: invariants and half-periods from a
# real-root cubic, and evaluators for p, p', zeta, sigma on the complex plane.
#
# Conventions (for three real roots c1 < c2 < c3, centered so they sum to 0):
# - omega2 is the real positive half-period, p(omega2) = c3 (largest root);
# - omega1 lies on the negative imaginary axis, p(omega1) = c1;
# - omega3 = omega1 + omega2, p(omega3) = c2.
#
# Evaluation: the argument is reduced to the Voronoi cell of the period
# lattice, halved until it is well inside the Laurent disk, evaluated by
# truncated series, and pushed back out with duplication formulas and the
# sigma/zeta quasi-periodicity relations.
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import gauss_adaptive

__all__ = [
    "WeierstrassContext",
    "DegenerateLatticeError",
    "LatticePoleError",
    "context_from_cubic",
    "wp",
    "wp_prime",
    "zeta_w",
    "sigma_w",
    "addition_kernel",
]

_N_COEFFS = 40
_RADIUS_FACTOR = 0.4


class DegenerateLatticeError(ValueError):
    """Raised when the cubic has (near-)double roots and the lattice degenerates."""


class LatticePoleError(ValueError):
    """Raised when an evaluation point sits on the period lattice."""


@dataclass(frozen=True)
class WeierstrassContext:
    """Immutable invariants, periods and series data for one elliptic curve.

    roots are the centered roots of 4z^3 - g2 z - g3, sorted ascending;
    shift records the centering offset (mean of the input roots).
    """

    g2: float
    g3: float
    roots: tuple[float, float, float]
    shift: float
    omega1: complex
    omega2: complex
    eta1: complex = field(default=0.0j)
    eta2: complex = field(default=0.0j)
    coeffs: tuple[float, ...] = field(default=())
    radius: float = 0.0

    @property
    def omega3(self) -> complex:
        return self.omega1 + self.omega2

    @property
    def eta3(self) -> complex:
        return self.eta1 + self.eta2


def _laurent_coeffs(g2: float, g3: float, count: int) -> tuple[float, ...]:
    # c_2 = g2/20, c_3 = g3/28, then the quadratic recursion; these are the
    # coefficients of p(z) = 1/z^2 + sum c_k z^(2k-2).
    c = [0.0] * (count + 1)
    if count >= 2:
        c[2] = g2 / 20.0
    if count >= 3:
        c[3] = g3 / 28.0
    for k in range(4, count + 1):
        acc = 0.0
        for m in range(2, k - 1):
            acc += c[m] * c[k - m]
        c[k] = 3.0 * acc / ((2 * k + 1) * (k - 3))
    return tuple(c)


def _lattice_min_length(omega1: complex, omega2: complex) -> float:
    cands = [2 * omega1, 2 * omega2, 2 * omega1 + 2 * omega2, 2 * omega1 - 2 * omega2]
    return min(abs(v) for v in cands)


def context_from_cubic(r1: float, r2: float, r3: float) -> WeierstrassContext:
    """Invariants and half-periods for the curve w^2 = 4(z-r1)(z-r2)(z-r3).

    The roots are centered (shifted by minus their mean) so that the cubic
    takes the normal form 4z^3 - g2 z - g3; the shift is recorded.
    """
    shift = (r1 + r2 + r3) / 3.0
    c1, c2, c3 = sorted((r1 - shift, r2 - shift, r3 - shift))
    span = c3 - c1
    gap = min(c2 - c1, c3 - c2)
    if span <= 0.0 or gap < 1e-10 * max(1.0, span):
        raise DegenerateLatticeError(
            f"near-double roots (gap {gap:.3e}): the period lattice degenerates"
        )
    g2 = -4.0 * (c1 * c2 + c1 * c3 + c2 * c3)
    g3 = 4.0 * c1 * c2 * c3

    # Real half-period: integral of dz/sqrt(4(z-c1)(z-c2)(z-c3)) over the
    # middle gap [c1, c2], where the cubic is positive.  The sin^2 map
    # z = c1 + (c2-c1) sin^2(theta) removes both endpoint singularities.
    d21 = c2 - c1

    def f_real(theta: np.ndarray) -> np.ndarray:
        st = np.sin(theta)
        z = c1 + d21 * st * st
        return 1.0 / np.sqrt(c3 - z)

    omega2 = complex(gauss_adaptive(f_real, 0.0, 0.5 * math.pi))

    # Imaginary half-period: same integral over [c2, c3] where the cubic is
    # negative; orientation per the convention at the top of the module.
    d32 = c3 - c2

    def f_imag(theta: np.ndarray) -> np.ndarray:
        st = np.sin(theta)
        z = c2 + d32 * st * st
        return 1.0 / np.sqrt(z - c1)

    omega1 = -1j * complex(gauss_adaptive(f_imag, 0.0, 0.5 * math.pi))

    coeffs = _laurent_coeffs(g2, g3, _N_COEFFS)
    radius = _RADIUS_FACTOR * _lattice_min_length(omega1, omega2)
    ctx = WeierstrassContext(
        g2=g2,
        g3=g3,
        roots=(c1, c2, c3),
        shift=shift,
        omega1=omega1,
        omega2=omega2,
        coeffs=coeffs,
        radius=radius,
    )
    # Bootstrap the zeta half-period values (no lattice reduction needed:
    # the half-periods already lie in the fundamental cell).
    eta1 = _zeta_small(omega1, ctx)
    eta2 = _zeta_small(omega2, ctx)
    object.__setattr__(ctx, "eta1", eta1)
    object.__setattr__(ctx, "eta2", eta2)
    return ctx


# ---------------------------------------------------------------------------
# Series evaluation inside the Laurent disk.


def _series_all(z: complex, ctx: WeierstrassContext):
    """(p, p', zeta, sigma) by truncated Laurent/Taylor series, |z| < radius."""
    z2 = z * z
    p = 1.0 / z2
    pp = -2.0 / (z2 * z)
    zeta = 1.0 / z
    logs = 0.0 + 0.0j  # log(sigma/z)
    zpow = z2  # z^(2k-2) for k = 2
    small_run = 0
    for k in range(2, len(ctx.coeffs)):
        ck = ctx.coeffs[k]
        term_p = ck * zpow
        p += term_p
        pp += (2 * k - 2) * ck * zpow / z
        zeta -= ck * zpow * z / (2 * k - 1)
        logs -= ck * zpow * z2 / ((2 * k) * (2 * k - 1))
        zpow *= z2
        # Lemniscatic-type invariants zero out alternate coefficients, so a
        # single tiny term does not mean the tail is negligible.
        small_run = small_run + 1 if abs(term_p) < 1e-18 * max(1.0, abs(p)) else 0
        if small_run >= 2 and k > 4:
            break
    return p, pp, zeta, z * cmath.exp(logs)


def _dup(p, pp, zeta, sigma, g2):
    """One argument-doubling step for all four functions."""
    ppp = 6.0 * p * p - 0.5 * g2
    lam = ppp / (2.0 * pp)
    p2 = -2.0 * p + lam * lam
    pp2 = lam * (6.0 * p - 2.0 * lam * lam) - pp
    zeta2 = 2.0 * zeta + lam
    sigma2 = -pp * sigma**4
    return p2, pp2, zeta2, sigma2


def _eval_small(z: complex, ctx: WeierstrassContext):
    """(p, p', zeta, sigma) at any z in the fundamental cell (off lattice)."""
    halvings = 0
    zz = z
    while abs(zz) > ctx.radius:
        zz *= 0.5
        halvings += 1
    vals = _series_all(zz, ctx)
    for _ in range(halvings):
        vals = _dup(*vals, ctx.g2)
    return vals


def _zeta_small(z: complex, ctx: WeierstrassContext) -> complex:
    return _eval_small(z, ctx)[2]


# ---------------------------------------------------------------------------
# Lattice reduction.


def _reduce(z: complex, ctx: WeierstrassContext):
    """Nearest-lattice-point reduction: z = z0 + 2m omega1 + 2n omega2."""
    w1, w2 = 2.0 * ctx.omega1, 2.0 * ctx.omega2
    det = w1.real * w2.imag - w1.imag * w2.real
    m0 = (z.real * w2.imag - z.imag * w2.real) / det
    n0 = (w1.real * z.imag - w1.imag * z.real) / det
    best = None
    for dm in (-1, 0, 1):
        for dn in (-1, 0, 1):
            m = round(m0) + dm
            n = round(n0) + dn
            z0 = z - m * w1 - n * w2
            if best is None or abs(z0) < abs(best[0]):
                best = (z0, m, n)
    z0, m, n = best
    if abs(z0) < 1e-12 * max(1.0, abs(z)) + 1e-300:
        raise LatticePoleError(f"argument {z} lies on the period lattice")
    return z0, m, n


def _eval_all(z: complex, ctx: WeierstrassContext):
    z0, m, n = _reduce(complex(z), ctx)
    p, pp, zeta, sigma = _eval_small(z0, ctx)
    if m == 0 and n == 0:
        return p, pp, zeta, sigma
    eta = 2.0 * m * ctx.eta1 + 2.0 * n * ctx.eta2
    zeta = zeta + eta
    # sigma(z0 + 2m w1 + 2n w2) = (-1)^(m+n+mn) sigma(z0) exp(eta (z0 + m w1 + n w2))
    sign = -1.0 if (m + n + m * n) % 2 else 1.0
    sigma = sign * sigma * cmath.exp(eta * (z0 + m * ctx.omega1 + n * ctx.omega2))
    return p, pp, zeta, sigma


# ---------------------------------------------------------------------------
# Public evaluators.


def wp(x: complex, ctx: WeierstrassContext) -> complex:
    """Weierstrass p-function of the context's lattice."""
    return _eval_all(x, ctx)[0]


def wp_prime(x: complex, ctx: WeierstrassContext) -> complex:
    """Derivative p'(x); satisfies p'^2 = 4p^3 - g2 p - g3."""
    return _eval_all(x, ctx)[1]


def zeta_w(x: complex, ctx: WeierstrassContext) -> complex:
    """Weierstrass zeta, the odd primitive of -p."""
    return _eval_all(x, ctx)[2]


def sigma_w(x: complex, ctx: WeierstrassContext) -> complex:
    """Weierstrass sigma, the odd entire function with sigma'/sigma = zeta."""
    try:
        return _eval_all(x, ctx)[3]
    except LatticePoleError:
        return 0.0j  # sigma is entire with simple zeros on the lattice


def addition_kernel(xi: complex, eta: complex, ctx: WeierstrassContext) -> complex:
    """Common value of p'(eta)/(p(xi)-p(eta)) and zeta(xi-eta)-zeta(xi+eta)+2zeta(eta).

    Both sides are evaluated; a residual above tolerance or coincident
    p-values raise ValueError.
    """
    p_xi = wp(xi, ctx)
    p_eta = wp(eta, ctx)
    den = p_xi - p_eta
    scale = max(1.0, abs(p_xi), abs(p_eta))
    if abs(den) < 1e-10 * scale:
        raise ValueError("p(xi) = p(eta): the addition kernel is singular")
    lhs = wp_prime(eta, ctx) / den
    rhs = zeta_w(xi - eta, ctx) - zeta_w(xi + eta, ctx) + 2.0 * zeta_w(eta, ctx)
    if abs(lhs - rhs) > 1e-8 * max(1.0, abs(lhs)):
        raise ValueError(
            f"addition identity residual {abs(lhs - rhs):.3e} out of tolerance"
        )
    return lhs
