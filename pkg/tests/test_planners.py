import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from equitc.errors import (
    BadParams, DegenerateObstacle, EvenDimension, OddDimension, PointOnObstacle, SegmentMisses,
    VerticalSegment,
)
from equitc.planners import (
    CharTuple, antipodal_domain, char_tuple, farber_counterexample, farber_planner_F2, in_farber_domain,
    plan_euclidean_pair, plan_euclidean_symmetrized, plan_sphere_antipodal_effective,
    plan_sphere_reflection_effective, plan_sphere_standard, plan_torus_effectual, radial_data,
    radial_offset, rotation_legs,
)
from equitc.spaces import ObstacleSet, TorusPoint, sup_distance, torus_distance, torus_strata

e1, e2, e3 = np.eye(3)
I = 1j


# -- spheres ------------------------------------------------------------------------

def test_antipodal_two_points():
    dom, mp = plan_sphere_antipodal_effective([e1, e2])
    assert str(dom) == "U_1"
    assert mp.patch == (1,)
    assert np.allclose(mp.paths[1].start, -e1) and np.allclose(mp.paths[1].end, e2)


def test_antipodal_counts_differing_components():
    assert str(plan_sphere_antipodal_effective([e1, e2, e1])[0]) == "U_1"
    assert antipodal_domain([e1, e1, e1]) == 0
    dom, mp = plan_sphere_antipodal_effective([e1, -e1])
    assert str(dom) == "U_1" and mp.paths[1].kinds == ["constant"]


def test_reflection_pole_is_constant():
    dom, mp = plan_sphere_reflection_effective([e3, e3])
    assert str(dom) == "V_1"
    pts = mp.paths[1](np.linspace(0, 1, 9))
    assert np.allclose(pts, e3)


def test_reflection_generic_pair():
    dom, mp = plan_sphere_reflection_effective([e1, e2])
    assert str(dom) == "V_0"
    assert mp.patch == (1,)
    assert np.allclose(mp.paths[1](0.5), [math.sqrt(0.5), math.sqrt(0.5), 0])


def test_reflection_two_hits_and_beta_plane():
    v = np.array([0.6, 0.0, 0.8])
    w = np.array([-0.6, 0.0, 0.8])
    dom, mp = plan_sphere_reflection_effective([v, w, w])
    assert str(dom) == "V_2"
    pts = mp.paths[1](np.linspace(0, 1, 17))
    assert np.allclose(pts[:, 2], 0.8) and np.allclose(pts[-1], w)


def test_dimension_guards():
    with pytest.raises(OddDimension):
        plan_sphere_reflection_effective([np.array([1.0, 0, 0, 0])] * 2)
    with pytest.raises(EvenDimension):
        plan_sphere_standard([e1, e2])


def test_standard_planner_on_circle():
    dom, mp = plan_sphere_standard([np.array([1.0, 0]), np.array([-1.0, 0])])
    assert str(dom) == "S_1"
    assert np.allclose(mp.paths[1](0.5), [0, 1]) and np.allclose(mp.paths[1].end, [-1, 0])
    dom, mp = plan_sphere_standard([np.array([1.0, 0])] * 3)
    assert str(dom) == "S_0" and all(p.kinds == ["constant"] for p in mp.paths)


# -- torus --------------------------------------------------------------------------

def test_char_tuple_examples():
    x = TorusPoint(1, 1)
    assert char_tuple(x, [x]).as_list() == [1, 0]
    x = TorusPoint(1, I)
    a = torus_strata(x).a_x
    assert char_tuple(x, [a]).as_list() == [0, 2]
    assert char_tuple(x, [TorusPoint(1, -I)]).as_list() == [0, 1]


def test_char_tuple_validation():
    with pytest.raises(BadParams):
        CharTuple(2, (0,))
    assert str(CharTuple(0, (1, 2))) == "(0,1,2)" and CharTuple(1, (2, 2)).total == 5


def test_torus_chi_two_recipe():
    x = TorusPoint(1, I)
    st_ = torus_strata(x)
    dom, ct, mp = plan_torus_effectual(x, [st_.a_x])
    assert str(dom) == "D_2"
    path = mp.paths[1]
    assert path.kinds == ["torus-arc"] * 3
    lengths = [p.length for p, _, _ in path.segments]
    assert np.allclose(lengths, [math.pi, math.pi / 2, math.pi])
    assert np.allclose(path.segments[0][0].end, TorusPoint(1, -I).vec())
    assert np.allclose(path.end, st_.a_x.vec())


def test_torus_paths_stay_in_half_torus():
    rng = np.random.default_rng(4)
    for _ in range(50):
        x = TorusPoint.from_angles(*rng.uniform(-math.pi, math.pi, 2))
        zs = [TorusPoint.from_angles(*rng.uniform(-math.pi, math.pi, 2)) for _ in range(2)]
        _, _, mp = plan_torus_effectual(x, zs)
        for p in mp.paths:
            pts = p(np.linspace(0, 1, 65))
            rel = np.angle((pts[:, 0] + 1j * pts[:, 1]) / x.h)
            assert np.all(np.abs(rel) <= math.pi / 2 + 1e-9)
        assert np.allclose(mp.paths[0](np.linspace(0, 1, 5)), x.vec())
        for p, z in zip(mp.paths[1:], zs):
            end = TorusPoint.from_vec(p.end)
            assert min(torus_distance(end, z), torus_distance(end, TorusPoint(-z.h, z.v.conjugate()))) < 1e-9


angles = st.floats(-math.pi, math.pi, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(angles, angles, angles, angles)
def test_output_independent_of_orbit_representative(a, b, c, d):
    x = TorusPoint.from_angles(a, b)
    z = TorusPoint.from_angles(c, d)
    sz = TorusPoint(-z.h, z.v.conjugate())
    try:
        r1 = plan_torus_effectual(x, [z])
    except Exception:
        assume(False)
    r2 = plan_torus_effectual(x, [sz])
    assert r1[1] == r2[1]
    assert sup_distance(r1[2], r2[2]) < 1e-12


# -- Euclidean ----------------------------------------------------------------------

def test_radial_data_examples():
    assert math.isclose(radial_data(ObstacleSet(np.array([[1.0, 0, 1]]))).theta, math.pi / 4)
    rd = radial_data(ObstacleSet(np.array([[1.0, 0, 1], [0, 1.0, 1]])))
    assert math.isclose(rd.theta, math.pi / 4)
    rd = radial_data(ObstacleSet(np.array([[1.0, 0, 1], [1.0, 1.0, 0]])))
    assert math.isclose(rd.theta, math.pi / 8)
    with pytest.raises(DegenerateObstacle):
        radial_data(ObstacleSet(np.array([[0, 0, 1.0]])))


OBS = ObstacleSet(np.array([[1.0, 0, 1], [0, 1.0, 1]]))


def test_euclid_off_radials():
    a, b = np.array([1.0, 1, 0]), np.array([-1.0, 2, 3])
    dom, mp = plan_euclidean_symmetrized([a, b], OBS)
    assert str(dom) == "F_0"
    assert all(p.kinds == ["segment"] for p in mp.paths)
    assert np.allclose(mp.starts(), 0)
    assert np.allclose(mp.ends(), [a, b])


def test_euclid_rotation_escape():
    a, b = np.array([2.0, 0, 2]), np.array([-1.0, 2, 3])
    dom, mp = plan_euclidean_symmetrized([a, b], OBS)
    assert str(dom) == "F_1"
    assert mp.paths[0].kinds == ["segment", "rotation"]
    pts = mp.paths[0](np.linspace(0, 1, 257))
    assert OBS.clearance(pts) > 1e-6
    rot = rotation_legs(mp.paths[0])[0]
    s = np.linspace(0, 1, 65)[1:]
    assert radial_offset(rot(s), radial_data(OBS)).min() > 0


def test_euclid_all_on_radials():
    pts = [np.array([2.0, 0, 2]), np.array([0, 3.0, 3]), np.array([-1.0, 0, -1])]
    dom, mp = plan_euclidean_symmetrized(pts, OBS)
    assert str(dom) == "F_3"
    assert all(len(rotation_legs(p)) == 1 for p in mp.paths)


def test_euclid_pair_wrapper():
    a, b = np.array([1.0, 1, 0]), np.array([-1.0, 2, 3])
    dom, path = plan_euclidean_pair(a, b, OBS)
    assert np.allclose(path(0), a) and np.allclose(path(0.5), 0) and np.allclose(path(1), b)


def test_euclid_rejections():
    with pytest.raises(PointOnObstacle):
        plan_euclidean_symmetrized([np.array([1.0, 0, 1]), np.array([1.0, 1, 0])], OBS)
    with pytest.raises(PointOnObstacle):
        plan_euclidean_symmetrized([np.zeros(3), np.array([1.0, 1, 0])], OBS)
    with pytest.raises(BadParams):
        plan_euclidean_symmetrized([np.array([1.0, 1]), np.array([2.0, 1])], ObstacleSet(np.array([[1.0, 0]])))


@settings(max_examples=60, deadline=None)
@given(st.permutations([0, 1, 2]), st.integers(0, 1000))
def test_euclid_permutation_equivariance(perm, seed):
    rng = np.random.default_rng(seed)
    pts = [rng.normal(size=3) for _ in range(3)]
    pts[0] = OBS.points[0] * rng.uniform(0.5, 2)
    _, mp = plan_euclidean_symmetrized(pts, OBS)
    _, mq = plan_euclidean_symmetrized([pts[i] for i in perm], OBS)
    t = np.linspace(0, 1, 33)
    for k, i in enumerate(perm):
        assert np.allclose(mq.paths[k](t), mp.paths[i](t))


# -- Farber ---------------------------------------------------------------------------

def test_farber_single_detour():
    obs = ObstacleSet(np.zeros((1, 3)))
    path = farber_planner_F2(np.array([-1.0, 0, 0]), np.array([1.0, 0, 0]), obs, 0.5)
    assert path.kinds == ["segment", "arc", "segment"]
    assert np.allclose(path(0), [-1, 0, 0]) and np.allclose(path(1), [1, 0, 0])
    pts = path(np.linspace(0, 1, 2001))
    assert math.isclose(pts[:, 2].max(), 0.25, rel_tol=1e-5)
    assert obs.clearance(pts) >= 0.25 - 1e-9


def test_farber_two_collinear_detours():
    obs = ObstacleSet(np.array([[0, 0, 0.0], [1.0, 0, 0]]))
    path = farber_planner_F2(np.array([-1.0, 0, 0]), np.array([2.0, 0, 0]), obs, 0.5)
    assert path.kinds.count("arc") == 2


def test_farber_errors():
    obs = ObstacleSet(np.zeros((1, 3)))
    with pytest.raises(SegmentMisses):
        farber_planner_F2(np.array([-1.0, 1, 0]), np.array([1.0, 1, 0]), obs, 0.5)
    with pytest.raises(VerticalSegment):
        farber_planner_F2(np.array([0, 0, -1.0]), np.array([0, 0, 1.0]), obs, 0.5)


def test_counterexample_lives_in_domain():
    ce = farber_counterexample(20)
    assert len(ce.pairs) == 20
    assert all(in_farber_domain(a, b, ce.obstacles) for a, b in ce.pairs)
    assert in_farber_domain(*ce.limit, ce.obstacles)
    assert len(farber_counterexample(1).pairs) == 1
    with pytest.raises(BadParams):
        farber_counterexample(0)
