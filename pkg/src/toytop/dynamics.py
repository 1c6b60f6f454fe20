# The unreduced mechanical system in the fixed frame: energies, momentum map,
# the configuration derivative of the Lagrangian, equations of motion
#   m' = [omega, m] + DL(Phi, omega),   Phi' = omega Phi,
# and an RK4 time stepper on the pair (m, Phi) with post-step group projection.
#
# Units: the gravitational acceleration is fixed at 1.
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .su2 import (
    E3,
    SpecialUnitary,
    Su2Vector,
    adjoint_rotate,
    bracket,
    inner,
)

__all__ = [
    "TopParams",
    "TopState",
    "FirstIntegrals",
    "kinetic_energy",
    "potential_energy",
    "momentum",
    "momentum_to_omega",
    "dl",
    "axis_vector",
    "state_from_omega",
    "omega_of_state",
    "u_of_state",
    "u_dot_of_state",
    "step",
    "first_integrals",
    "simulate",
]

K_VECTOR = E3  # vertical unit vector, aligned with the third basis element


@dataclass(frozen=True)
class TopParams:
    """Physical constants: inertia moments A (transverse) and C (axial),
    tip-to-center distance s, and p = mass * s (gravity = 1)."""

    A: float
    C: float
    s: float
    p: float

    def __post_init__(self):
        if min(self.A, self.C, self.s, self.p) <= 0.0:
            raise ValueError("A, C, s, p must all be positive")
        if self.C > 2.0 * self.A * (1.0 + 1e-12):
            warnings.warn(
                f"C = {self.C} > 2A = {2 * self.A}: not realizable as a rigid body",
                stacklevel=2,
            )

    @property
    def e4(self) -> float:
        return math.sqrt(1.0 + self.A / (self.p * self.s))


@dataclass(frozen=True)
class TopState:
    phi: SpecialUnitary
    m: Su2Vector  # fixed-frame momentum
    t: float = 0.0


@dataclass(frozen=True)
class FirstIntegrals:
    h: float  # total energy
    l: float  # vertical momentum component <m, k>
    n: float  # axial momentum component <m, r>

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.h, self.l, self.n)


def axis_vector(phi: SpecialUnitary) -> Su2Vector:
    """Unit vector r = Ad_phi(k) along the symmetry axis (closed form)."""
    a, b = phi.alpha, phi.beta
    ab = a * b
    return Su2Vector(-2.0 * ab.real, -2.0 * ab.imag, abs(a) ** 2 - abs(b) ** 2)


def kinetic_energy(phi: SpecialUnitary, omega: Su2Vector, params: TopParams) -> float:
    """T = (A/2)<w,w> + ((C-A)/2)<w,r>^2 + (ps/2)<[r,k],w>^2."""
    r = axis_vector(phi)
    q = bracket(r, K_VECTOR)
    return (
        0.5 * params.A * inner(omega, omega)
        + 0.5 * (params.C - params.A) * inner(omega, r) ** 2
        + 0.5 * params.p * params.s * inner(q, omega) ** 2
    )


def potential_energy(phi: SpecialUnitary, params: TopParams) -> float:
    """V = p <r, k>."""
    return params.p * inner(axis_vector(phi), K_VECTOR)


def momentum(phi: SpecialUnitary, omega: Su2Vector, params: TopParams) -> Su2Vector:
    """m = A w + (C-A)<w,r> r + ps <[r,k],w> [r,k]."""
    r = axis_vector(phi)
    q = bracket(r, K_VECTOR)
    return (
        params.A * omega
        + (params.C - params.A) * inner(omega, r) * r
        + params.p * params.s * inner(q, omega) * q
    )


def momentum_to_omega(m: Su2Vector, phi: SpecialUnitary, params: TopParams) -> Su2Vector:
    """Invert the momentum map (spectral form; r and [r,k] are orthogonal).

    The 3x3 form has eigenvalues C, A + ps(1-u^2) and A in the orthogonal
    basis (r, [r,k]^, .), all positive for positive parameters.
    """
    A, C, ps = params.A, params.C, params.p * params.s
    r = axis_vector(phi)
    q = bracket(r, K_VECTOR)
    qq = inner(q, q)
    rm = inner(r, m)
    qm = inner(q, m)
    return (
        (1.0 / A) * m
        + (1.0 / C - 1.0 / A) * rm * r
        - (ps / (A * (A + ps * qq))) * qm * q
    )


def dl(phi: SpecialUnitary, omega: Su2Vector, params: TopParams) -> Su2Vector:
    """DL = (C-A)<w,r>[r,w] + ps<[r,k],w>[r,[k,w]] - p[r,k].

    The sign of the gravity term is fixed by the variational definition
    <DL, eta> = d/deps L(exp(eps eta) Phi, omega): since L = T - V and the
    variation of V = p<r,k> is +p<eta,[r,k]>, the term enters with a minus.
    """
    r = axis_vector(phi)
    q = bracket(r, K_VECTOR)
    return (
        (params.C - params.A) * inner(omega, r) * bracket(r, omega)
        + params.p * params.s * inner(q, omega) * bracket(r, bracket(K_VECTOR, omega))
        - params.p * q
    )


def state_from_omega(
    phi: SpecialUnitary, omega: Su2Vector, params: TopParams, t: float = 0.0
) -> TopState:
    """Initial state from attitude and angular velocity (exact momentum map)."""
    return TopState(phi, momentum(phi, omega, params), t)


def omega_of_state(state: TopState, params: TopParams) -> Su2Vector:
    return momentum_to_omega(state.m, state.phi, params)


def u_of_state(state: TopState) -> float:
    """Cosine of the inclination, u = <r, k>."""
    return inner(axis_vector(state.phi), K_VECTOR)


def u_dot_of_state(state: TopState, params: TopParams) -> float:
    """u' = <omega, [r,k]> along the motion."""
    r = axis_vector(state.phi)
    return inner(omega_of_state(state, params), bracket(r, K_VECTOR))


def first_integrals(state: TopState, params: TopParams) -> FirstIntegrals:
    omega = omega_of_state(state, params)
    h = kinetic_energy(state.phi, omega, params) + potential_energy(state.phi, params)
    r = axis_vector(state.phi)
    return FirstIntegrals(h, inner(state.m, K_VECTOR), inner(state.m, r))


# ---------------------------------------------------------------------------
# Fast scalar RK4 core.  The state is carried as (alpha, beta, m1, m2, m3)
# with gamma = -conj(beta), delta = conj(alpha) implied, which keeps the
# integrator free of per-stage 2x2 matrix allocations.


def _deriv(a: complex, b: complex, m1: float, m2: float, m3: float, p: TopParams):
    ab = a * b
    r1, r2, r3 = -2.0 * ab.real, -2.0 * ab.imag, abs(a) ** 2 - abs(b) ** 2
    q1, q2 = r2, -r1  # q = [r, k]
    A, C, ps, pg = p.A, p.C, p.p * p.s, p.p

    rm = r1 * m1 + r2 * m2 + r3 * m3
    qm = q1 * m1 + q2 * m2
    qq = q1 * q1 + q2 * q2
    ca = 1.0 / C - 1.0 / A
    cb = -ps / (A * (A + ps * qq))
    w1 = m1 / A + ca * rm * r1 + cb * qm * q1
    w2 = m2 / A + ca * rm * r2 + cb * qm * q2
    w3 = m3 / A + ca * rm * r3

    # DL = (C-A)<w,r>[r,w] + ps<q,w>[r,[k,w]] + p q
    wr = w1 * r1 + w2 * r2 + w3 * r3
    qw = q1 * w1 + q2 * w2
    rxw1 = r2 * w3 - r3 * w2
    rxw2 = r3 * w1 - r1 * w3
    rxw3 = r1 * w2 - r2 * w1
    # [k, w] = (-w2, w1, 0)
    rkw1 = r2 * 0.0 - r3 * w1
    rkw2 = r3 * (-w2) - r1 * 0.0
    rkw3 = r1 * w1 - r2 * (-w2)
    cCA = C - A
    d1 = cCA * wr * rxw1 + ps * qw * rkw1 - pg * q1
    d2 = cCA * wr * rxw2 + ps * qw * rkw2 - pg * q2
    d3 = cCA * wr * rxw3 + ps * qw * rkw3

    # m' = [w, m] + DL
    dm1 = w2 * m3 - w3 * m2 + d1
    dm2 = w3 * m1 - w1 * m3 + d2
    dm3 = w1 * m2 - w2 * m1 + d3

    # Phi' = omega Phi (first row; second row follows from the group structure)
    da = 0.5 * (1j * w3 * a + (w2 - 1j * w1) * b.conjugate())
    db = 0.5 * (1j * w3 * b + (-w2 + 1j * w1) * a.conjugate())
    return da, db, dm1, dm2, dm3


def _rk4_step(a, b, m1, m2, m3, dt, p: TopParams):
    k1 = _deriv(a, b, m1, m2, m3, p)
    h = 0.5 * dt
    k2 = _deriv(a + h * k1[0], b + h * k1[1], m1 + h * k1[2], m2 + h * k1[3], m3 + h * k1[4], p)
    k3 = _deriv(a + h * k2[0], b + h * k2[1], m1 + h * k2[2], m2 + h * k2[3], m3 + h * k2[4], p)
    k4 = _deriv(
        a + dt * k3[0], b + dt * k3[1], m1 + dt * k3[2], m2 + dt * k3[3], m3 + dt * k3[4], p
    )
    c = dt / 6.0
    a += c * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0])
    b += c * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1])
    m1 += c * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2])
    m2 += c * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3])
    m3 += c * (k1[4] + 2.0 * (k2[4] + k3[4]) + k4[4])
    # Project back onto SU(2); the (alpha, beta) representation already
    # enforces the conjugation structure, only the norm can drift.
    nrm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return a / nrm, b / nrm, m1, m2, m3


def step(state: TopState, dt: float, params: TopParams) -> TopState:
    """One explicit RK4 step of the equations of motion (local error O(dt^5))."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    a, b, m1, m2, m3 = _rk4_step(
        state.phi.alpha,
        state.phi.beta,
        state.m.x1,
        state.m.x2,
        state.m.x3,
        dt,
        params,
    )
    return TopState(
        SpecialUnitary.from_alpha_beta(a, b), Su2Vector(m1, m2, m3), state.t + dt
    )


def simulate(
    initial: TopState, dt: float, t_end: float, params: TopParams
) -> list[TopState]:
    """Integrate to t_end, returning the dense sequence of states at step
    boundaries (initial state included)."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_end < initial.t:
        raise ValueError("t_end must not precede the initial time")
    n_steps = int(round((t_end - initial.t) / dt))
    out = [initial]
    a, b = initial.phi.alpha, initial.phi.beta
    m1, m2, m3 = initial.m.x1, initial.m.x2, initial.m.x3
    t = initial.t
    for i in range(n_steps):
        a, b, m1, m2, m3 = _rk4_step(a, b, m1, m2, m3, dt, params)
        t = initial.t + (i + 1) * dt
        out.append(
            TopState(SpecialUnitary.from_alpha_beta(a, b), Su2Vector(m1, m2, m3), t)
        )
    return out
