"""Planners in R^m minus finitely many points.

The symmetrized planner routes every component through the origin.  A
component lying on a radial (the line through the origin and an obstacle)
first rotates about the z-axis by the angle ``theta`` to leave the radial.
Farber's planner for segments meeting an obstacle is kept as a reference:
it detours over each obstacle and is unstable in its domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import BadParams, DegenerateObstacle, PointOnObstacle, SegmentMisses, VerticalSegment
from ..spaces import TOL, Arc, Multipath, ObstacleSet, PathFn, Reversed, Rotation, Segment, plane_rotation
from .common import DomainIndex, point_array


@dataclass(frozen=True)
class RadialData:
    radials: np.ndarray          # unit direction of each radial, one row per obstacle
    theta: float
    lines: np.ndarray            # unit direction of each projected line in the xy-plane

    def rotation(self, m: int) -> np.ndarray:
        """Skew generator of the rotation about the z-axis (the x1-x2 plane)."""
        return plane_rotation(m, 0, 1)

    def A(self, angle: float, p) -> np.ndarray:
        c, s = math.cos(angle), math.sin(angle)
        q = np.array(p, dtype=float)
        q[0], q[1] = c * p[0] - s * p[1], s * p[0] + c * p[1]
        return q


def radial_data(obs: ObstacleSet, m: int | None = None) -> RadialData:
    m = obs.m if m is None else m
    if obs.m != m:
        raise BadParams(f"obstacles live in R^{obs.m}, not R^{m}")
    xy = obs.points[:, :2]
    nxy = np.linalg.norm(xy, axis=1)
    if np.any(nxy <= obs.tolerance):
        raise DegenerateObstacle("an obstacle projects to the origin of the xy-plane")
    radials = obs.points / np.linalg.norm(obs.points, axis=1)[:, None]
    lines = xy / nxy[:, None]
    gaps = [math.acos(min(1.0, abs(float(lines[i] @ lines[j]))))
            for i in range(len(lines)) for j in range(i + 1, len(lines))]
    gaps = [g for g in gaps if g > obs.tolerance]
    theta = min(gaps) / 2 if gaps else math.pi / 4
    return RadialData(radials, theta, lines)


def on_radial(p, rd: RadialData, tol: float = TOL) -> bool:
    p = np.asarray(p, dtype=float)
    along = rd.radials @ p
    off = np.linalg.norm(p[None, :] - along[:, None] * rd.radials, axis=1)
    return bool(off.min() <= tol)


def radial_count(points, rd: RadialData, tol: float = TOL) -> int:
    return sum(on_radial(p, rd, tol) for p in np.atleast_2d(points))


def radial_offset(points, rd: RadialData) -> np.ndarray:
    """Angle between the xy-projection of each point and the nearest projected radial line."""
    xy = np.atleast_2d(np.asarray(points, dtype=float))[:, :2]
    ang = np.arctan2(xy[:, 1], xy[:, 0])[:, None] - np.arctan2(rd.lines[:, 1], rd.lines[:, 0])[None, :]
    ang = np.mod(ang, math.pi)
    return np.minimum(ang, math.pi - ang).min(axis=1)


def rotation_legs(path: PathFn) -> list[Rotation]:
    """The escape rotations of a leg, each oriented to start on its radial."""
    out = []
    for prim, _, _ in path.primitive("rotation"):
        while isinstance(prim, Reversed):
            prim = prim.inner
        out.append(prim)
    return out


def _check_inputs(x: np.ndarray, obs: ObstacleSet):
    if x.shape[1] != obs.m:
        raise BadParams(f"points live in R^{x.shape[1]}, obstacles in R^{obs.m}")
    if obs.m < 3:
        raise BadParams("the rotation escape needs m >= 3")
    for p in x:
        if np.linalg.norm(p) <= obs.tolerance:
            raise PointOnObstacle("the origin is the routing hub and cannot be an input")
        if obs.hit(p):
            raise PointOnObstacle(f"{p.tolist()} is an obstacle")


def origin_leg(p, rd: RadialData, tol: float = TOL) -> PathFn:
    """Path from the origin to ``p``; through ``A_theta p`` when ``p`` is on a radial."""
    p = np.asarray(p, dtype=float)
    zero = np.zeros_like(p)
    if not on_radial(p, rd, tol):
        return PathFn(((Segment(zero, p), 0.0, 1.0),))
    turn = Rotation(p, rd.rotation(p.size), rd.theta)
    return PathFn.chain([Segment(zero, turn.end), Reversed(turn)], weights=[1, 1])


def plan_euclidean_symmetrized(points, obs: ObstacleSet, tol: float = TOL) -> tuple[DomainIndex, Multipath]:
    x = point_array(points, n_min=1)
    _check_inputs(x, obs)
    rd = radial_data(obs)
    legs = [origin_leg(p, rd, tol) for p in x]
    return DomainIndex("F", radial_count(x, rd, tol)), Multipath(tuple(legs))


def plan_euclidean_pair(a, b, obs: ObstacleSet, tol: float = TOL) -> tuple[DomainIndex, PathFn]:
    """The two-point planner ``a -> 0 -> b``, each half using a quarter per leg when escaping."""
    dom, mp = plan_euclidean_symmetrized([a, b], obs, tol)
    return dom, mp.paths[0].reversed().then(mp.paths[1])


# -- Farber's planner ------------------------------------------------------------

def segment_hits(a, b, obs: ObstacleSet, tol: float | None = None) -> list[tuple[float, int]]:
    """Obstacles on the open segment ``(a, b)``, as (distance from a, obstacle index), sorted."""
    tol = obs.tolerance if tol is None else tol
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    L = float(np.linalg.norm(b - a))
    u = (b - a) / L
    out = []
    for k, p in enumerate(obs.points):
        s = float((p - a) @ u)
        if 0 < s < L and np.linalg.norm(p - a - s * u) <= tol:
            out.append((s, k))
    return sorted(out)


def in_farber_domain(a, b, obs: ObstacleSet) -> bool:
    """Membership in the domain where ``[a, b]`` meets an obstacle and is not vertical."""
    u = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
    if np.linalg.norm(u[:2]) <= obs.tolerance * np.linalg.norm(u):
        return False
    return bool(segment_hits(a, b, obs))


def farber_planner_F2(a, b, obs: ObstacleSet, eps: float) -> PathFn:
    """Straight towards ``b``, with an upper semicircle of radius ``eps/2`` over each obstacle on the way."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if obs.m != 3 or a.size != 3 or b.size != 3:
        raise BadParams("Farber's planner lives in R^3")
    if not 0 < eps < obs.min_separation():
        raise BadParams("eps must be positive and below the minimal obstacle separation")
    L = float(np.linalg.norm(b - a))
    u = (b - a) / L
    ez = np.array([0.0, 0.0, 1.0])
    w = ez - (ez @ u) * u
    if np.linalg.norm(w) <= obs.tolerance:
        raise VerticalSegment("the segment is parallel to the z-axis")
    w /= np.linalg.norm(w)
    hits = segment_hits(a, b, obs)
    if not hits:
        raise SegmentMisses("the segment avoids every obstacle")
    r = eps / 2
    prims = []
    pos = 0.0
    for s, _ in hits:
        if s - r < pos or s + r > L:
            raise BadParams("an endpoint lies within eps/2 of an obstacle on the segment")
        if s - r > pos:
            prims.append(Segment(a + pos * u, a + (s - r) * u))
        prims.append(Arc(a + s * u, u, w, r, math.pi, 0.0))
        pos = s + r
    if pos < L:
        prims.append(Segment(a + pos * u, b))
    return PathFn.chain(prims)


FARBER_EPS = 0.5
FARBER_OBSTACLES = ((-1.0, 1.0, 0.0), (1.0, 1.0, 0.0))


class Counterexample(NamedTuple):
    pairs: list[tuple[np.ndarray, np.ndarray]]
    limit: tuple[np.ndarray, np.ndarray]
    obstacles: ObstacleSet


def farber_counterexample(k: int) -> Counterexample:
    """Segments through one obstacle that tilt towards a second one.

    Pair ``j`` passes through ``p_1`` with slope ``0.1 * 2**-j`` and misses
    ``p_2`` by about ``0.2 * 2**-j``; the limit segment runs through both.
    """
    if not 1 <= k <= 26:
        raise BadParams("k must lie in 1..26 so that every near miss stays above the tolerance")
    obs = ObstacleSet(np.array(FARBER_OBSTACLES))
    p1 = obs.points[0]
    pairs = []
    for j in range(1, k + 1):
        d = np.array([1.0, 0.1 * 2.0**-j, 0.0])
        d /= np.linalg.norm(d)
        pairs.append((p1 - d, p1 + 3 * d))
    e = np.array([1.0, 0.0, 0.0])
    return Counterexample(pairs, (p1 - e, p1 + 3 * e), obs)
