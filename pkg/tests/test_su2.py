# Group/algebra layer: vector-matrix identification, adjoint action,
# stereographic projection and Moebius maps.
from __future__ import annotations

import math

import numpy as np
import pytest

from helpers import group_distance, rand_su2
from toytop.su2 import (
    E1,
    E2,
    E3,
    ComplexPoint,
    GroupMembershipError,
    SpecialUnitary,
    Su2Vector,
    adjoint_rotate,
    angular_velocity_body,
    angular_velocity_fixed,
    bracket,
    inner,
    matrix_to_vec,
    mobius_apply,
    renormalize,
    stereo_inverse,
    vec_to_matrix,
)


def test_vec_matrix_round_trip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = Su2Vector(*rng.normal(size=3))
        w = matrix_to_vec(vec_to_matrix(v))
        assert abs(v.x1 - w.x1) + abs(v.x2 - w.x2) + abs(v.x3 - w.x3) < 1e-14


def test_bracket_matches_commutator_and_cross_product():
    rng = np.random.default_rng(2)
    for _ in range(20):
        x = Su2Vector(*rng.normal(size=3))
        y = Su2Vector(*rng.normal(size=3))
        mx, my = vec_to_matrix(x), vec_to_matrix(y)
        comm = matrix_to_vec(mx @ my - my @ mx)
        br = bracket(x, y)
        cross = np.cross(x.as_array(), y.as_array())
        assert np.allclose(br.as_array(), comm.as_array(), atol=1e-13)
        assert np.allclose(br.as_array(), cross, atol=1e-13)


def test_inner_matches_trace_form():
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = Su2Vector(*rng.normal(size=3))
        y = Su2Vector(*rng.normal(size=3))
        tr = -2.0 * np.trace(vec_to_matrix(x) @ vec_to_matrix(y))
        assert abs(inner(x, y) - tr.real) < 1e-13
        assert abs(tr.imag) < 1e-13


def test_group_structure_and_inverse():
    rng = np.random.default_rng(4)
    for _ in range(20):
        g = rand_su2(rng)
        g.check(1e-12)
        ident = g @ g.inverse()
        assert group_distance(ident, SpecialUnitary.identity()) < 1e-14


def test_membership_rejects_far_matrices():
    with pytest.raises(GroupMembershipError):
        SpecialUnitary.from_alpha_beta(3.0 + 0j, 0j)
    bad = SpecialUnitary(1.0 + 0j, 0.5 + 0j, 0.5 + 0j, 1.0 + 0j)
    with pytest.raises(GroupMembershipError):
        bad.check()


def test_adjoint_is_rotation():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = rand_su2(rng)
        x = Su2Vector(*rng.normal(size=3))
        y = Su2Vector(*rng.normal(size=3))
        gx, gy = adjoint_rotate(g, x), adjoint_rotate(g, y)
        assert abs(inner(gx, gy) - inner(x, y)) < 1e-12
        # orientation: Ad preserves the bracket
        assert (
            np.abs(
                adjoint_rotate(g, bracket(x, y)).as_array()
                - bracket(gx, gy).as_array()
            ).max()
            < 1e-12
        )


def test_stereo_inverse_basics():
    assert np.allclose(stereo_inverse(ComplexPoint.of(0j)).as_array(), [0, 0, -1])
    assert np.allclose(stereo_inverse(ComplexPoint.infinity()).as_array(), [0, 0, 1])
    v = stereo_inverse(ComplexPoint.of(1.0 + 0j))
    assert abs(v.norm() - 1.0) < 1e-14


def test_commuting_square():
    rng = np.random.default_rng(6)
    for _ in range(200):
        g = rand_su2(rng)
        z = ComplexPoint.of(complex(*rng.normal(scale=2.0, size=2)))
        lhs = stereo_inverse(mobius_apply(g, z))
        rhs = adjoint_rotate(g, stereo_inverse(z))
        assert np.abs(lhs.as_array() - rhs.as_array()).max() < 1e-12


def test_mobius_infinity_handling():
    g = SpecialUnitary.from_alpha_beta(
        math.sqrt(0.5) + 0j, math.sqrt(0.5) * 1j
    )
    out = mobius_apply(g, ComplexPoint.infinity())
    assert not out.at_infinity
    pole = -g.delta / g.gamma
    assert mobius_apply(g, ComplexPoint.of(pole)).at_infinity


def test_renormalize_projects_and_is_idempotent():
    rng = np.random.default_rng(7)
    g = rand_su2(rng)
    m = g.as_matrix() * (1.0 + 1e-3) + 1e-4 * rng.normal(size=(2, 2))
    h = renormalize(m)
    h.check(1e-12)
    h2 = renormalize(h.as_matrix())
    assert group_distance(h, h2) < 1e-14
    with pytest.raises(GroupMembershipError):
        renormalize(np.diag([3.0, 0.1]).astype(complex))


def test_angular_velocities():
    rng = np.random.default_rng(8)
    g = rand_su2(rng)
    w = Su2Vector(*rng.normal(size=3))
    phi_dot = vec_to_matrix(w) @ g.as_matrix()
    w_fixed = angular_velocity_fixed(g, phi_dot)
    assert np.abs(w_fixed.as_array() - w.as_array()).max() < 1e-12
    w_body = angular_velocity_body(g, phi_dot)
    assert np.abs(adjoint_rotate(g, w_body).as_array() - w.as_array()).max() < 1e-12
