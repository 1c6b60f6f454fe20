# Integrable dynamics of a symmetric top whose axis point is confined to a
# horizontal plane: SU(2) kinematics, equations of motion, reduction to a
# hyperelliptic curve, tip-curve classification, Weierstrass special
# functions, and elliptic closed forms at the degenerate root collisions.
from __future__ import annotations

from .cubic import real_roots_monic
from .degenerate import (
    AperiodicSolution,
    DegeneracyKind,
    E3E4Solution,
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
from .dynamics import (
    FirstIntegrals,
    TopParams,
    TopState,
    axis_vector,
    first_integrals,
    kinetic_energy,
    momentum,
    momentum_to_omega,
    omega_of_state,
    potential_energy,
    simulate,
    state_from_omega,
    step,
    u_dot_of_state,
    u_of_state,
)
from .elliptic import (
    DegenerateLatticeError,
    LatticePoleError,
    WeierstrassContext,
    addition_kernel,
    context_from_cubic,
    sigma_w,
    wp,
    wp_prime,
    zeta_w,
)
from .quadrature import QuadratureError, gauss_adaptive, gauss_panels
from .reduction import (
    BranchPoints,
    DegenerateRootsError,
    InfeasibleConstantsError,
    ReducedConstants,
    branch_points,
    cayley_klein_quadrature,
    constants_from_roots,
    leg_time,
    matching_branch,
    nutation_half_period,
    reduced_rhs,
    turning_point_state,
    w_at_pm1,
)
from .su2 import (
    ComplexPoint,
    GroupMembershipError,
    SpecialUnitary,
    Su2Vector,
    adjoint_rotate,
    angular_velocity_body,
    angular_velocity_fixed,
    bracket,
    inner,
    mobius_apply,
    stereo_inverse,
)
from .tip_curve import (
    TipClass,
    TipSample,
    classify,
    count_self_intersections,
    dphi_du,
    loop_threshold,
    tip_point,
    trace_curve,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # su2
    "SpecialUnitary",
    "Su2Vector",
    "ComplexPoint",
    "GroupMembershipError",
    "bracket",
    "inner",
    "adjoint_rotate",
    "angular_velocity_fixed",
    "angular_velocity_body",
    "stereo_inverse",
    "mobius_apply",
    # dynamics
    "TopParams",
    "TopState",
    "FirstIntegrals",
    "axis_vector",
    "kinetic_energy",
    "potential_energy",
    "momentum",
    "momentum_to_omega",
    "state_from_omega",
    "omega_of_state",
    "u_of_state",
    "u_dot_of_state",
    "first_integrals",
    "step",
    "simulate",
    # reduction
    "ReducedConstants",
    "BranchPoints",
    "InfeasibleConstantsError",
    "DegenerateRootsError",
    "reduced_rhs",
    "branch_points",
    "constants_from_roots",
    "matching_branch",
    "w_at_pm1",
    "nutation_half_period",
    "leg_time",
    "cayley_klein_quadrature",
    "turning_point_state",
    # tip curve
    "TipSample",
    "TipClass",
    "tip_point",
    "dphi_du",
    "classify",
    "trace_curve",
    "loop_threshold",
    "count_self_intersections",
    # elliptic
    "WeierstrassContext",
    "DegenerateLatticeError",
    "LatticePoleError",
    "context_from_cubic",
    "wp",
    "wp_prime",
    "zeta_w",
    "sigma_w",
    "addition_kernel",
    # degenerate
    "DegeneracyKind",
    "detect",
    "precession_rates",
    "E3E4Solution",
    "e3e4_solution",
    "e3e4_u_of_x",
    "e3e4_time",
    "e3e4_cayley_klein",
    "e3e4_u_of_time",
    "AperiodicSolution",
    "aperiodic_solution",
    "aperiodic_u_of_x",
    "aperiodic_time",
    "aperiodic_cayley_klein",
    "aperiodic_x_of_time",
    "lagrange_limit_time",
    # numerics
    "real_roots_monic",
    "gauss_panels",
    "gauss_adaptive",
    "QuadratureError",
]
