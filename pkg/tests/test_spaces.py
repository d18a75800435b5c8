import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from equitc.errors import AntipodalPair, BadParams, ShapeMismatch, SpaceMismatch, UnsupportedPair
from equitc.spaces import (
    ACTIONS, BrokenMultipath, GreatArc, Multipath, ObstacleSet, PathFn, Rotation, Segment, TorusArc,
    TorusPoint, apply_action, block_rotation, dumps, group_element, multipath_record, normalize,
    slerp_geodesic, sphere_point, sup_distance, torus_strata,
)

unit = st.lists(st.floats(-1, 1, allow_nan=False), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 0.1).map(normalize)
angle = st.floats(-math.pi, math.pi, allow_nan=False)


def test_sphere_point_validation():
    assert sphere_point([0, 0, 1]).shape == (3,)
    with pytest.raises(BadParams):
        sphere_point([0, 0, 2])
    with pytest.raises(BadParams):
        sphere_point([1])


def test_torus_point_round_trip():
    p = TorusPoint.from_angles(0.3, -2.0)
    q = TorusPoint.from_vec(p.vec())
    assert abs(p.h - q.h) < 1e-15 and abs(p.v - q.v) < 1e-15
    assert np.allclose(p.angles(), (0.3, -2.0))
    with pytest.raises(BadParams):
        TorusPoint(2, 1)


def test_obstacles_must_be_distinct():
    with pytest.raises(BadParams):
        ObstacleSet(np.array([[1.0, 0, 0], [1.0, 0, 0]]))
    obs = ObstacleSet(np.array([[1.0, 0, 0], [0, 2.0, 0]]))
    assert obs.r == 2 and obs.m == 3
    assert math.isclose(obs.min_separation(), math.sqrt(5))
    assert obs.hit([1.0, 0, 0]) and not obs.hit([0, 0, 0])


def test_group_elements():
    assert group_element("σ") == 1 and group_element("e") == 0
    with pytest.raises(BadParams):
        group_element(2)


def test_action_errors():
    with pytest.raises(UnsupportedPair):
        apply_action("surface-rotation", 1, [1, 0])
    with pytest.raises(SpaceMismatch):
        apply_action("sphere-antipodal", 1, TorusPoint(1, 1))
    with pytest.raises(UnsupportedPair):
        apply_action("klein", 1, [1, 0])


def test_great_arc_refuses_antipodes():
    with pytest.raises(AntipodalPair):
        GreatArc(np.array([1.0, 0, 0]), np.array([-1.0, 0, 0]))


def test_slerp_endpoints_and_speed():
    u, v = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    p = slerp_geodesic(u, v)
    assert np.allclose(p(0.0), u) and np.allclose(p(1.0), v)
    assert np.allclose(p(0.5), normalize([1, 1, 0]))
    assert math.isclose(p.length, math.pi / 2)
    assert slerp_geodesic(u, u).kinds == ["constant"]
    with pytest.raises(ShapeMismatch):
        slerp_geodesic(u, np.array([1.0, 0]))


def test_rotation_primitive():
    J = block_rotation(4)
    p = np.array([1.0, 0, 0, 0])
    r = Rotation(p, J, math.pi)
    assert np.allclose(r.end, -p)
    assert np.allclose(np.linalg.norm(r(np.linspace(0, 1, 9)), axis=1), 1)
    with pytest.raises(BadParams):
        block_rotation(3)


def test_path_chain_rejects_jumps():
    a = Segment(np.zeros(2), np.ones(2))
    b = Segment(np.array([5.0, 5.0]), np.zeros(2))
    with pytest.raises(BadParams):
        PathFn.chain([a, b])


def test_path_chain_arclength_timing():
    a = Segment(np.zeros(2), np.array([1.0, 0]))
    b = Segment(np.array([1.0, 0]), np.array([1.0, 3.0]))
    p = PathFn.chain([a, b])
    assert np.allclose(p(0.25), [1.0, 0])
    assert p.kinds == ["segment", "segment"]
    assert np.allclose(p([0, 1]), [[0, 0], [1, 3]])


def test_then_and_reversed():
    a = PathFn.chain([Segment(np.zeros(2), np.array([1.0, 0]))])
    b = PathFn.chain([Segment(np.array([1.0, 0]), np.array([1.0, 1.0]))])
    c = a.then(b)
    assert np.allclose(c(0.5), [1, 0]) and np.allclose(c(1), [1, 1])
    assert np.allclose(c.reversed()(0.0), [1, 1])


def test_torus_arc_stays_on_torus():
    arc = TorusArc(1 + 0j, 1j, math.pi, -math.pi / 2)
    pts = arc(np.linspace(0, 1, 17))
    assert np.allclose(np.linalg.norm(pts[:, :2], axis=1), 1)
    assert np.allclose(np.linalg.norm(pts[:, 2:], axis=1), 1)
    assert np.allclose(arc.end, TorusPoint(-1, 1).vec())


def test_multipath_common_start():
    e1, e2 = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    Multipath((PathFn.constant(e1), slerp_geodesic(e1, e2)))
    with pytest.raises(BadParams):
        Multipath((PathFn.constant(e1), PathFn.constant(e2)))


def test_broken_multipath_patch():
    e1, e2 = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    act = ACTIONS["sphere-antipodal"]
    BrokenMultipath((PathFn.constant(e1), slerp_geodesic(-e1, e2)), act, (1,))
    with pytest.raises(BadParams):
        BrokenMultipath((PathFn.constant(e1), slerp_geodesic(-e1, e2)), act, (0,))
    with pytest.raises(ShapeMismatch):
        BrokenMultipath((PathFn.constant(e1),), act, (1,))


def test_sup_distance():
    e1, e2 = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    p = Multipath((PathFn.constant(e1),))
    q = Multipath((PathFn.constant(e2),))
    assert math.isclose(sup_distance(p, q), math.sqrt(2))
    with pytest.raises(ShapeMismatch):
        sup_distance(p, Multipath((PathFn.constant(e1), PathFn.constant(e1))))


def test_strata_landmarks():
    st_ = torus_strata(TorusPoint(1, 1j))
    assert abs(st_.b - (-1j)) < 1e-15
    assert abs(st_.a_x.h - 1j) < 1e-15 and abs(st_.a_x.v - 1j) < 1e-15
    assert not st_.in_E()
    assert torus_strata(TorusPoint(1, -1)).in_E()


def test_record_is_deterministic():
    e1, e2 = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    mp = Multipath((PathFn.constant(e1), slerp_geodesic(e1, e2)))
    r1 = multipath_record(mp, space="sphere", action="x", inputs=[e1, e2], domain="S_0", samples=8)
    r2 = multipath_record(mp, space="sphere", action="x", inputs=[e1, e2], domain="S_0", samples=8)
    assert dumps(r1) == dumps(r2)
    assert len(r1["paths"][1]["samples"]) == 8


@settings(max_examples=80, deadline=None)
@given(unit, unit)
def test_slerp_reversal(u, v):
    assume(np.linalg.norm(u + v) > 1e-3)
    t = np.linspace(0, 1, 33)
    assert np.allclose(slerp_geodesic(u, v)(t), slerp_geodesic(v, u)(1 - t), atol=1e-12)


@settings(max_examples=80, deadline=None)
@given(unit)
def test_sphere_actions_are_involutions(p):
    for kind in ("sphere-antipodal", "sphere-reflection"):
        q = apply_action(kind, 1, apply_action(kind, 1, p))
        assert np.allclose(q, p)


@settings(max_examples=80, deadline=None)
@given(angle, angle)
def test_torus_action_is_free_involution(a, b):
    p = TorusPoint.from_angles(a, b)
    q = apply_action("torus-antipodal", 1, p)
    r = apply_action("torus-antipodal", 1, q)
    assert abs(r.h - p.h) < 1e-12 and abs(r.v - p.v) < 1e-12
    assert abs(q.h - p.h) > 1.9
