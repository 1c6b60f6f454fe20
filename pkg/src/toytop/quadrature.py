# Gauss-Legendre quadrature with adaptive panel doubling, and the
# sin^2 substitution that removes inverse-square-root endpoint singularities.
from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["gauss_panels", "gauss_adaptive", "sin_sq_nodes", "QuadratureError"]

_ORDER = 24
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)


class QuadratureError(RuntimeError):
    """Raised when adaptive panel refinement fails to converge."""


def gauss_panels(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, panels: int):
    """Composite Gauss-Legendre rule with the given number of equal panels."""
    edges = np.linspace(a, b, panels + 1)
    acc = None
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        vals = f(mid + half * _NODES)
        part = half * np.sum(_WEIGHTS * vals)
        acc = part if acc is None else acc + part
    return acc


def gauss_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    max_panels: int = 4096,
):
    """Refine the panel count until two successive estimates agree."""
    if a == b:
        return 0.0
    prev = gauss_panels(f, a, b, 1)
    panels = 2
    while panels <= max_panels:
        cur = gauss_panels(f, a, b, panels)
        if abs(cur - prev) <= max(atol, rtol * abs(cur)):
            return cur
        prev = cur
        panels *= 2
    raise QuadratureError(
        f"quadrature did not converge on [{a}, {b}] with {max_panels} panels"
    )


def sin_sq_nodes(a: float, b: float, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map theta in [0, pi/2] to u = a + (b-a) sin^2(theta); return (u, du/dtheta)."""
    s, c = np.sin(theta), np.cos(theta)
    u = a + (b - a) * s * s
    du = 2.0 * (b - a) * s * c
    return u, du
