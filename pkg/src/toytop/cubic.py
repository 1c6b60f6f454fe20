# Closed-form real-root solver for monic cubics via the trigonometric method,
# with one Newton polish per root for clustered-root robustness.
from __future__ import annotations

import numpy as np

__all__ = ["real_roots_monic"]


def _polish(u: float, b: float, c: float, d: float) -> float:
    # Single Newton step; near double roots the derivative can vanish, in
    # which case the closed-form value is kept.
    f = ((u + b) * u + c) * u + d
    fp = (3.0 * u + 2.0 * b) * u + c
    if fp != 0.0:
        step = f / fp
        if abs(step) < 1e-2 * max(1.0, abs(u)):
            u = u - step
    return u


def real_roots_monic(b: float, c: float, d: float) -> np.ndarray:
    """All real roots of u^3 + b u^2 + c u + d, sorted ascending.

    Returns three roots when the discriminant is nonnegative (double roots
    repeated), one root otherwise.
    """
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0

    # Depressed cubic t^3 + p t + q, roots u = t + shift.
    disc = -4.0 * p**3 - 27.0 * q * q
    if p >= 0.0 and disc < 0.0:
        # Monotone cubic: single real root (hyperbolic formula).
        if p == 0.0:
            t = -np.cbrt(q)
        else:
            arg = 1.5 * q / p * np.sqrt(3.0 / p)
            t = -2.0 * np.sqrt(p / 3.0) * np.sinh(np.arcsinh(arg) / 3.0)
        return np.array([_polish(t + shift, b, c, d)])
    if disc < 0.0:
        # One real root, p < 0.
        a0 = np.sqrt(-p / 3.0)
        arg = -1.5 * abs(q) / p / a0
        t = -2.0 * np.sign(q) * a0 * np.cosh(np.arccosh(arg) / 3.0)
        return np.array([_polish(t + shift, b, c, d)])

    # Three real roots (counted with multiplicity): trigonometric form.
    if p == 0.0:
        roots = np.full(3, shift)
    else:
        a0 = np.sqrt(-p / 3.0)
        cosarg = np.clip(1.5 * q / (p * a0), -1.0, 1.0)
        phi = np.arccos(cosarg) / 3.0
        ts = 2.0 * a0 * np.cos(phi - 2.0 * np.pi * np.arange(3) / 3.0)
        roots = ts + shift
    roots = np.array([_polish(u, b, c, d) for u in roots])
    roots.sort()
    return roots
