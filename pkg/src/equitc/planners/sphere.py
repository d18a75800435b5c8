"""Planners on S^m: effective planners for the antipodal and reflection
actions, and the ordinary planner on odd spheres."""
from __future__ import annotations

import math

import numpy as np

from ..errors import BadParams, EvenDimension, OddDimension
from ..spaces import (
    ACTIONS, TOL, BrokenMultipath, Multipath, PathFn, Rotation, block_rotation, slerp_geodesic,
)
from .common import DomainIndex, close, point_array


def _sphere_points(points) -> np.ndarray:
    x = point_array(points)
    if x.shape[1] < 2:
        raise BadParams("S^m needs m >= 1")
    if np.any(np.abs(np.linalg.norm(x, axis=1) - 1.0) > 1e-9):
        raise BadParams("all points must have unit norm")
    return x


def _patch(h: list[int]) -> tuple[int, ...]:
    return tuple((a + b) % 2 for a, b in zip(h, h[1:]))


def antipodal_domain(points, tol: float = TOL) -> int:
    """``j`` with the input in ``U_j``: components after the first that differ from it."""
    x = _sphere_points(points)
    return sum(not close(y, x[0], tol) for y in x[1:])


def plan_sphere_antipodal_effective(points, tol: float = TOL) -> tuple[DomainIndex, BrokenMultipath]:
    """Constant path at ``x_1``, then ``[-x_1, x_i]`` for every ``x_i != x_1``."""
    x = _sphere_points(points)
    x1 = x[0]
    paths, h = [PathFn.constant(x1)], [0]
    for y in x[1:]:
        if close(y, x1, tol):
            paths.append(PathFn.constant(x1))
            h.append(0)
        else:
            paths.append(slerp_geodesic(-x1, y))
            h.append(1)
    j = sum(h[1:])
    return DomainIndex("U", j), BrokenMultipath(tuple(paths), ACTIONS["sphere-antipodal"], _patch(h))


def rho(v) -> np.ndarray:
    w = np.array(v, dtype=float)
    w[-1] = -w[-1]
    return w


def reflection_domain(points, tol: float = TOL) -> int:
    """``j`` with the input in ``V_j``: components after the first equal to ``-rho(v_1)``."""
    x = _sphere_points(points)
    target = -rho(x[0])
    return sum(close(y, target, tol) for y in x[1:])


def beta(v) -> PathFn:
    """Half turn of the horizontal part of ``v`` by the block complex structure.

    Runs from ``v`` to ``-rho(v)`` inside the hyperplane of constant last
    coordinate; constant at the poles.
    """
    v = np.asarray(v, dtype=float)
    m = v.size - 1
    if m % 2:
        raise OddDimension("the field on the horizontal slices needs m even")
    return PathFn(((Rotation(v, block_rotation(m + 1, upto=m), math.pi), 0.0, 1.0),))


def plan_sphere_reflection_effective(points, tol: float = TOL) -> tuple[DomainIndex, BrokenMultipath]:
    x = _sphere_points(points)
    m = x.shape[1] - 1
    if m % 2:
        raise OddDimension(f"m = {m} is odd; use plan_sphere_standard")
    v1 = x[0]
    target, moved = -rho(v1), rho(v1)
    paths, h = [PathFn.constant(v1)], [0]
    j = 0
    for w in x[1:]:
        if close(w, target, tol):
            paths.append(beta(v1))
            h.append(0)
            j += 1
        else:
            paths.append(slerp_geodesic(moved, w))
            h.append(1)
    return DomainIndex("V", j), BrokenMultipath(tuple(paths), ACTIONS["sphere-reflection"], _patch(h))


def standard_domain(points, tol: float = TOL) -> int:
    x = _sphere_points(points)
    return sum(close(y, -x[0], tol) for y in x[1:])


def plan_sphere_standard(points, tol: float = TOL) -> tuple[DomainIndex, Multipath]:
    """Ordinary multipath from ``x_1``: geodesics, or a half great circle along
    the nonvanishing field ``J x_1`` when a target is antipodal."""
    x = _sphere_points(points)
    m = x.shape[1] - 1
    if m % 2 == 0:
        raise EvenDimension(f"m = {m} is even; S^m carries no nonvanishing field")
    x1 = x[0]
    J = block_rotation(m + 1)
    paths = [PathFn.constant(x1)]
    j = 0
    for y in x[1:]:
        if close(y, -x1, tol):
            paths.append(PathFn(((Rotation(x1, J, math.pi), 0.0, 1.0),)))
            j += 1
        else:
            paths.append(slerp_geodesic(x1, y))
    return DomainIndex("S", j), Multipath(tuple(paths))
