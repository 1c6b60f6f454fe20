# Group/algebra layer: identification of R^3 with su(2), adjoint rotations,
# angular velocities, stereographic projection and Moebius maps.
#
# Conventions:
# - A vector (x1, x2, x3) is identified with the trace-free skew-hermitian
#   matrix (1/2) [[i x3, -x2 + i x1], [x2 + i x1, -i x3]], so that the cross
#   product matches the matrix commutator and <x, y> = -2 Tr(x y) is the
#   Euclidean dot product.
# - The third axis of the fixed frame points upward.
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpecialUnitary",
    "Su2Vector",
    "ComplexPoint",
    "GroupMembershipError",
    "E1",
    "E2",
    "E3",
    "vec_to_matrix",
    "matrix_to_vec",
    "bracket",
    "inner",
    "adjoint_rotate",
    "angular_velocity_fixed",
    "angular_velocity_body",
    "stereo_inverse",
    "mobius_apply",
    "renormalize",
]

GROUP_TOL = 1e-9


class GroupMembershipError(ValueError):
    """Raised when a matrix is too far from SU(2) to be accepted."""


@dataclass(frozen=True)
class Su2Vector:
    x1: float
    x2: float
    x3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Su2Vector":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def norm(self) -> float:
        return float(np.sqrt(self.x1**2 + self.x2**2 + self.x3**2))

    def __add__(self, other: "Su2Vector") -> "Su2Vector":
        return Su2Vector(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Su2Vector") -> "Su2Vector":
        return Su2Vector(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __mul__(self, c: float) -> "Su2Vector":
        return Su2Vector(self.x1 * c, self.x2 * c, self.x3 * c)

    __rmul__ = __mul__

    def __neg__(self) -> "Su2Vector":
        return Su2Vector(-self.x1, -self.x2, -self.x3)


E1 = Su2Vector(1.0, 0.0, 0.0)
E2 = Su2Vector(0.0, 1.0, 0.0)
E3 = Su2Vector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SpecialUnitary:
    """Attitude of the top; the entries are the Cayley-Klein parameters.

    Invariants: delta = conj(alpha), gamma = -conj(beta) and
    alpha*delta - beta*gamma = |alpha|^2 + |beta|^2 = 1.
    """

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    @classmethod
    def identity(cls) -> "SpecialUnitary":
        return cls(1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j)

    @classmethod
    def from_alpha_beta(cls, alpha: complex, beta: complex) -> "SpecialUnitary":
        """Build from the first row, enforcing the SU(2) structure exactly."""
        n = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if not np.isfinite(n) or abs(n - 1.0) > 0.1:
            raise GroupMembershipError(f"|alpha|^2+|beta|^2 = {n**2} too far from 1")
        a, b = alpha / n, beta / n
        return cls(a, b, -np.conj(b), np.conj(a))

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha, self.beta], [self.gamma, self.delta]], dtype=complex
        )

    def inverse(self) -> "SpecialUnitary":
        return SpecialUnitary(self.delta, -self.beta, -self.gamma, self.alpha)

    def __matmul__(self, other: "SpecialUnitary") -> "SpecialUnitary":
        return SpecialUnitary(
            self.alpha * other.alpha + self.beta * other.gamma,
            self.alpha * other.beta + self.beta * other.delta,
            self.gamma * other.alpha + self.delta * other.gamma,
            self.gamma * other.beta + self.delta * other.delta,
        )

    def membership_residual(self) -> float:
        return max(
            abs(self.alpha * self.delta - self.beta * self.gamma - 1.0),
            abs(self.delta - np.conj(self.alpha)),
            abs(self.gamma + np.conj(self.beta)),
        )

    def check(self, tol: float = GROUP_TOL) -> None:
        res = self.membership_residual()
        if res > tol:
            raise GroupMembershipError(f"SU(2) residual {res:.3e} exceeds {tol:.1e}")


@dataclass(frozen=True)
class ComplexPoint:
    """A point of the extended complex plane (Riemann sphere)."""

    value: complex = 0.0j
    at_infinity: bool = False

    @classmethod
    def infinity(cls) -> "ComplexPoint":
        return cls(0.0j, True)

    @classmethod
    def of(cls, z: complex) -> "ComplexPoint":
        return cls(complex(z), False)


def vec_to_matrix(v: Su2Vector) -> np.ndarray:
    """Matrix form (1/2)[[i x3, -x2+i x1], [x2+i x1, -i x3]] of a vector."""
    x1, x2, x3 = v.x1, v.x2, v.x3
    return 0.5 * np.array(
        [[1j * x3, -x2 + 1j * x1], [x2 + 1j * x1, -1j * x3]], dtype=complex
    )


def matrix_to_vec(m: np.ndarray, tol: float = GROUP_TOL) -> Su2Vector:
    """Inverse of vec_to_matrix; rejects matrices that are not (nearly) in su(2)."""
    x1 = 2.0 * m[1, 0].imag
    x2 = 2.0 * m[1, 0].real
    x3 = 2.0 * m[0, 0].imag
    v = Su2Vector(x1, x2, x3)
    res = np.max(np.abs(m - vec_to_matrix(v)))
    scale = max(1.0, float(np.max(np.abs(m))))
    if res > tol * scale:
        raise ValueError(f"matrix is not in su(2): projection residual {res:.3e}")
    return v


def bracket(x: Su2Vector, y: Su2Vector) -> Su2Vector:
    """Lie bracket, equal to the cross product x x y."""
    return Su2Vector(
        x.x2 * y.x3 - x.x3 * y.x2,
        x.x3 * y.x1 - x.x1 * y.x3,
        x.x1 * y.x2 - x.x2 * y.x1,
    )


def inner(x: Su2Vector, y: Su2Vector) -> float:
    """Scalar product <x,y> = -2 Tr(x y), equal to the Euclidean dot product."""
    return x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3


def adjoint_rotate(phi: SpecialUnitary, x: Su2Vector, tol: float = GROUP_TOL) -> Su2Vector:
    """Vector of Phi * vec_to_matrix(x) * Phi^-1 (the SO(3) rotation Ad_Phi)."""
    phi.check(tol)
    m = phi.as_matrix() @ vec_to_matrix(x) @ phi.inverse().as_matrix()
    # Ad preserves su(2) exactly up to roundoff; use a loose projection tolerance.
    return matrix_to_vec(m, tol=1e-6)


def angular_velocity_fixed(
    phi: SpecialUnitary, phi_dot: np.ndarray, tol: float = 1e-8
) -> Su2Vector:
    """Fixed-frame angular velocity omega = Phi' Phi^-1 of an attitude curve."""
    m = np.asarray(phi_dot, dtype=complex) @ phi.inverse().as_matrix()
    return matrix_to_vec(m, tol=tol)


def angular_velocity_body(
    phi: SpecialUnitary, phi_dot: np.ndarray, tol: float = 1e-8
) -> Su2Vector:
    """Body-frame angular velocity Omega = Phi^-1 Phi'."""
    m = phi.inverse().as_matrix() @ np.asarray(phi_dot, dtype=complex)
    return matrix_to_vec(m, tol=tol)


def stereo_inverse(z: ComplexPoint) -> Su2Vector:
    """Unit sphere point corresponding to z under projection from the north pole."""
    if z.at_infinity:
        return Su2Vector(0.0, 0.0, 1.0)
    x, y = z.value.real, z.value.imag
    d = x * x + y * y + 1.0
    return Su2Vector(2.0 * x / d, 2.0 * y / d, (x * x + y * y - 1.0) / d)


def mobius_apply(phi: SpecialUnitary, z: ComplexPoint) -> ComplexPoint:
    """Moebius transformation z -> (alpha z + beta) / (gamma z + delta)."""
    a, b, c, d = phi.alpha, phi.beta, phi.gamma, phi.delta
    if z.at_infinity:
        if c == 0:
            return ComplexPoint.infinity()
        return ComplexPoint.of(a / c)
    num = a * z.value + b
    den = c * z.value + d
    if den == 0:
        return ComplexPoint.infinity()
    return ComplexPoint.of(num / den)


def renormalize(m: np.ndarray, max_distance: float = 0.1) -> SpecialUnitary:
    """Project an approximate group element back onto SU(2).

    Polar-type projection (nearest unitary) followed by exact enforcement of
    delta = conj(alpha), gamma = -conj(beta) and unit determinant. Idempotent
    on exact group elements.
    """
    m = np.asarray(m, dtype=complex)
    u_, s, vh = np.linalg.svd(m)
    if np.max(np.abs(s - 1.0)) > max_distance:
        raise GroupMembershipError(
            f"matrix too far from SU(2): singular values {s}"
        )
    q = u_ @ vh  # nearest unitary
    if np.linalg.det(q).real < 0:
        q = -q
    alpha = 0.5 * (q[0, 0] + np.conj(q[1, 1]))
    beta = 0.5 * (q[0, 1] - np.conj(q[1, 0]))
    return SpecialUnitary.from_alpha_beta(alpha, beta)
