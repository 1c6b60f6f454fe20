# Numeric utility layer: real cubic roots and adaptive Gauss quadrature.
from __future__ import annotations

import math

import numpy as np
import pytest

from toytop.cubic import real_roots_monic
from toytop.quadrature import QuadratureError, gauss_adaptive, gauss_panels, sin_sq_nodes


def test_cubic_three_real_roots():
    rng = np.random.default_rng(50)
    for _ in range(200):
        r = np.sort(rng.uniform(-3.0, 3.0, size=3))
        b = -float(r.sum())
        c = float(r[0] * r[1] + r[0] * r[2] + r[1] * r[2])
        d = -float(r.prod())
        roots = real_roots_monic(b, c, d)
        assert len(roots) == 3
        assert np.abs(np.sort(roots) - r).max() < 1e-10 * max(1.0, np.abs(r).max())


def test_cubic_single_real_root():
    # u^3 + u + 1 has one real root
    roots = real_roots_monic(0.0, 1.0, 1.0)
    assert len(roots) == 1
    x = roots[0]
    assert abs(x**3 + x + 1.0) < 1e-12


def test_gauss_adaptive_known_integrals():
    val = gauss_adaptive(np.sin, 0.0, math.pi)
    assert abs(val - 2.0) < 1e-13
    assert gauss_adaptive(np.cos, 1.0, 1.0) == 0.0
    # endpoint inverse-square-root singularity via the sin^2 map
    a, b = 0.25, 1.75

    def f(theta):
        u, du = sin_sq_nodes(a, b, theta)
        return du / np.sqrt((u - a) * (b - u))

    val = gauss_adaptive(f, 0.0, math.pi / 2.0)
    assert abs(val - math.pi) < 1e-12


def test_gauss_adaptive_divergence_raises():
    with pytest.raises(QuadratureError):
        gauss_adaptive(lambda x: np.random.default_rng().normal(size=np.shape(x)), 0.0, 1.0)


def test_gauss_panels_refinement():
    rough = gauss_panels(lambda x: np.abs(np.sin(8.0 * x)), 0.0, math.pi, 1)
    fine = gauss_panels(lambda x: np.abs(np.sin(8.0 * x)), 0.0, math.pi, 64)
    assert abs(fine - 2.0) < 1e-10
    assert abs(fine - rough) > 1e-8
