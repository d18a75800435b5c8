"""Points, Z2-actions, closed-form paths and multipaths on spheres, the flat
torus S^1 x S^1 in C^2, and punctured Euclidean space.

Paths are chains of exactly evaluable primitives.  Torus points are
evaluated as real 4-vectors ``(Re h, Im h, Re v, Im v)`` so that every
distance is the ambient Euclidean one.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    AntipodalPair, BadParams, ShapeMismatch, SpaceMismatch, UnsupportedPair,
)

TOL = 1e-9
NORM_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


# -- points -------------------------------------------------------------------

def sphere_point(coords: Sequence[float], tol: float = NORM_TOL) -> np.ndarray:
    p = _frozen(coords)
    if p.ndim != 1 or p.size < 2:
        raise BadParams("a point of S^m needs m+1 >= 2 coordinates")
    if abs(np.linalg.norm(p) - 1.0) > tol:
        raise BadParams(f"|p| = {np.linalg.norm(p):.3g}, expected 1")
    return p


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def euclid_point(coords: Sequence[float]) -> np.ndarray:
    p = _frozen(coords)
    if p.ndim != 1 or p.size < 2 or not np.all(np.isfinite(p)):
        raise BadParams("a Euclidean point needs m >= 2 finite coordinates")
    return p


@dataclass(frozen=True)
class TorusPoint:
    """``(h, v)`` with horizontal factor ``h`` and vertical factor ``v`` on the unit circle."""

    h: complex
    v: complex

    def __post_init__(self):
        h, v = complex(self.h), complex(self.v)
        if abs(abs(h) - 1) > NORM_TOL or abs(abs(v) - 1) > NORM_TOL:
            raise BadParams(f"torus factors must be unit complex numbers, got |h|={abs(h):.3g}, |v|={abs(v):.3g}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_angles(cls, a: float, b: float) -> "TorusPoint":
        return cls(cmath.exp(1j * a), cmath.exp(1j * b))

    @classmethod
    def from_vec(cls, x: Sequence[float]) -> "TorusPoint":
        if len(x) != 4:
            raise SpaceMismatch("a torus point is a 4-vector (Re h, Im h, Re v, Im v)")
        h, v = complex(x[0], x[1]), complex(x[2], x[3])
        return cls(h / abs(h), v / abs(v))

    def vec(self) -> np.ndarray:
        return np.array([self.h.real, self.h.imag, self.v.real, self.v.imag])

    def angles(self) -> tuple[float, float]:
        return cmath.phase(self.h), cmath.phase(self.v)


def as_torus_point(p) -> TorusPoint:
    if isinstance(p, TorusPoint):
        return p
    if len(p) == 2:
        return TorusPoint(complex(p[0]), complex(p[1]))
    return TorusPoint.from_vec(p)


def torus_distance(p: TorusPoint, q: TorusPoint) -> float:
    return math.hypot(abs(p.h - q.h), abs(p.v - q.v))


@dataclass(frozen=True)
class ObstacleSet:
    """Finitely many distinct points of R^m removed from the workspace."""

    points: np.ndarray
    tolerance: float = TOL

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.shape[0] < 1 or pts.shape[1] < 2:
            raise BadParams("need at least one obstacle in R^m, m >= 2")
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        np.fill_diagonal(d, np.inf)
        if d.min() <= self.tolerance:
            raise BadParams("obstacles must be pairwise distinct")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def r(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def min_separation(self) -> float:
        if self.r == 1:
            return math.inf
        d = np.linalg.norm(self.points[:, None, :] - self.points[None, :, :], axis=-1)
        return float(d[np.triu_indices(self.r, 1)].min())

    def clearance(self, pts: np.ndarray) -> float:
        """Smallest distance from any row of ``pts`` to an obstacle."""
        pts = np.atleast_2d(pts)
        return float(np.linalg.norm(pts[:, None, :] - self.points[None, :, :], axis=-1).min())

    def hit(self, p, tol: float | None = None) -> bool:
        return self.clearance(np.asarray(p)) <= (self.tolerance if tol is None else tol)


# -- group and actions ----------------------------------------------------------

_ELEMENT_NAMES = {"1": 0, "e": 0, "id": 0, "sigma": 1, "σ": 1, "rho": 1, "ρ": 1, "g": 1}


def group_element(g) -> int:
    """Normalize an element of Z2 to 0 (identity) or 1 (generator)."""
    if isinstance(g, str):
        if g not in _ELEMENT_NAMES:
            raise BadParams(f"unknown group element {g!r}")
        return _ELEMENT_NAMES[g]
    g = int(g)
    if g not in (0, 1):
        raise BadParams("Z2 elements are 0 or 1")
    return g


def _antipode(p):
    return -np.asarray(p, dtype=float)


def _reflect(p):
    q = np.array(p, dtype=float)
    q[-1] = -q[-1]
    return q


def _torus_antipodal(p):
    p = as_torus_point(p)
    return TorusPoint(-p.h, p.v.conjugate())


@dataclass(frozen=True)
class ActionSpec:
    kind: str
    space: str
    generator: Callable | None = None

    def __call__(self, p):
        return apply_action(self, 1, p)


ACTIONS = {
    "sphere-antipodal": ActionSpec("sphere-antipodal", "sphere", _antipode),
    "sphere-reflection": ActionSpec("sphere-reflection", "sphere", _reflect),
    "torus-antipodal": ActionSpec("torus-antipodal", "torus", _torus_antipodal),
    "surface-reflection": ActionSpec("surface-reflection", "surface"),
    "surface-rotation": ActionSpec("surface-rotation", "surface"),
    "surface-antipodal": ActionSpec("surface-antipodal", "surface"),
}


def action(kind: str) -> ActionSpec:
    try:
        return ACTIONS[kind]
    except KeyError:
        raise UnsupportedPair(f"unknown action {kind!r}; choose from {sorted(ACTIONS)}") from None


def act_on_vector(a: ActionSpec, g, vec) -> np.ndarray:
    """Apply ``g`` to a point given as its ambient coordinate vector."""
    if a.space == "torus":
        return apply_action(a, g, TorusPoint.from_vec(vec)).vec()
    return apply_action(a, g, vec)


def apply_action(a: ActionSpec | str, g, p):
    a = action(a) if isinstance(a, str) else a
    g = group_element(g)
    if a.generator is None:
        raise UnsupportedPair(f"{a.kind} acts on cohomology only; there is no point model")
    if a.space == "sphere":
        if isinstance(p, TorusPoint):
            raise SpaceMismatch(f"{a.kind} acts on spheres, got a torus point")
        arr = np.asarray(p, dtype=float)
        if arr.ndim != 1 or abs(np.linalg.norm(arr) - 1) > 1e-9:
            raise SpaceMismatch(f"{a.kind} expects a unit vector")
        return arr.copy() if g == 0 else a.generator(arr)
    try:
        tp = as_torus_point(p)
    except (BadParams, TypeError, ValueError):
        raise SpaceMismatch(f"{a.kind} expects a torus point") from None
    return tp if g == 0 else a.generator(tp)


# -- path primitives ---------------------------------------------------------------

class Primitive:
    """A closed-form map ``[0, 1] -> R^d`` with known length."""

    length: float = 0.0
    kind: str = "primitive"

    def __call__(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def start(self) -> np.ndarray:
        return self(np.zeros(1))[0]

    @property
    def end(self) -> np.ndarray:
        return self(np.ones(1))[0]


class Constant(Primitive):
    kind = "constant"

    def __init__(self, p):
        self.p = _frozen(p)
        self.length = 0.0

    def __call__(self, s):
        return np.broadcast_to(self.p, (len(s), self.p.size)).copy()


class GreatArc(Primitive):
    """Constant-speed shortest arc between two non-antipodal unit vectors."""

    kind = "geodesic"

    def __init__(self, u, v):
        self.u, self.v = _frozen(u), _frozen(v)
        c = float(np.clip(self.u @ self.v, -1.0, 1.0))
        w = self.v - c * self.u
        nw = np.linalg.norm(w)
        self.angle = math.atan2(nw, c)
        if self.angle > math.pi - 1e-9:
            raise AntipodalPair("no shortest arc between antipodal points")
        self.w = w / nw if nw > 0 else np.zeros_like(w)
        self.length = self.angle

    def __call__(self, s):
        a = np.asarray(s)[:, None] * self.angle
        return np.cos(a) * self.u + np.sin(a) * self.w


class Rotation(Primitive):
    """``s -> exp(s·angle·K) p`` for a skew matrix ``K`` with ``K^3 = -K``.

    Covers rotations in a coordinate plane and the rotation of the first
    ``m`` coordinates by the block complex structure.
    """

    kind = "rotation"

    def __init__(self, p, K, angle: float):
        self.p = _frozen(p)
        self.K = np.asarray(K, dtype=float)
        self.angle = float(angle)
        self.kp = self.K @ self.p
        self.radial = -(self.K @ self.kp)
        self.length = abs(self.angle) * float(np.linalg.norm(self.kp))

    def __call__(self, s):
        a = np.asarray(s)[:, None] * self.angle
        return self.p + (np.cos(a) - 1.0) * self.radial + np.sin(a) * self.kp


class Segment(Primitive):
    kind = "segment"

    def __init__(self, a, b):
        self.a, self.b = _frozen(a), _frozen(b)
        self.length = float(np.linalg.norm(self.b - self.a))

    def __call__(self, s):
        return self.a + np.asarray(s)[:, None] * (self.b - self.a)


class TorusArc(Primitive):
    """Straight line in angle coordinates: ``(h e^{i s dh}, v e^{i s dv})``."""

    kind = "torus-arc"

    def __init__(self, h: complex, v: complex, dh: float, dv: float):
        self.h, self.v = complex(h), complex(v)
        self.dh, self.dv = float(dh), float(dv)
        self.length = math.hypot(self.dh, self.dv)

    def __call__(self, s):
        s = np.asarray(s)
        h = self.h * np.exp(1j * self.dh * s)
        v = self.v * np.exp(1j * self.dv * s)
        return np.stack([h.real, h.imag, v.real, v.imag], axis=1)


class Arc(Primitive):
    """Upper semicircle (or any planar arc) ``c + r(cos φ e1 + sin φ e2)``, φ from φ0 to φ1."""

    kind = "arc"

    def __init__(self, center, e1, e2, radius: float, phi0: float, phi1: float):
        self.c, self.e1, self.e2 = _frozen(center), _frozen(e1), _frozen(e2)
        self.r, self.phi0, self.phi1 = float(radius), float(phi0), float(phi1)
        self.length = self.r * abs(self.phi1 - self.phi0)

    def __call__(self, s):
        phi = (self.phi0 + np.asarray(s) * (self.phi1 - self.phi0))[:, None]
        return self.c + self.r * (np.cos(phi) * self.e1 + np.sin(phi) * self.e2)


class Reversed(Primitive):
    def __init__(self, inner: Primitive):
        self.inner = inner
        self.kind = inner.kind
        self.length = inner.length

    def __call__(self, s):
        return self.inner(1.0 - np.asarray(s))


def block_rotation(dim: int, upto: int | None = None) -> np.ndarray:
    """``J(x1, x2, x3, x4, ...) = (-x2, x1, -x4, x3, ...)`` on the first ``upto`` coordinates."""
    upto = dim if upto is None else upto
    if upto % 2:
        raise BadParams("the block complex structure needs an even number of coordinates")
    J = np.zeros((dim, dim))
    for k in range(0, upto, 2):
        J[k + 1, k] = 1.0
        J[k, k + 1] = -1.0
    return J


def plane_rotation(dim: int, i: int = 0, j: int = 1) -> np.ndarray:
    """Generator of rotations in the ``(x_i, x_j)`` plane."""
    K = np.zeros((dim, dim))
    K[j, i] = 1.0
    K[i, j] = -1.0
    return K


# -- paths ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathFn:
    """Continuous map ``[0, 1] -> R^d`` built from primitives on consecutive subintervals."""

    segments: tuple[tuple[Primitive, float, float], ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise BadParams("a path needs at least one segment")
        if abs(segs[0][1]) > 1e-15 or abs(segs[-1][2] - 1.0) > 1e-15:
            raise BadParams("segment intervals must cover [0, 1]")
        for (p, a, b), (q, c, _) in zip(segs, segs[1:]):
            if abs(b - c) > 1e-15 or b < a:
                raise BadParams("segment intervals must be consecutive")
            gap = float(np.linalg.norm(p.end - q.start))
            if gap > 1e-9:
                raise BadParams(f"path jumps by {gap:.3g} at t = {b:.6g}")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "_breaks", np.array([s[2] for s in segs[:-1]]))

    @classmethod
    def chain(cls, prims: Sequence[Primitive], weights: Sequence[float] | None = None) -> "PathFn":
        """Concatenate ``prims``; time is shared in proportion to ``weights`` (default: length)."""
        prims = list(prims)
        w = np.array([p.length for p in prims] if weights is None else weights, dtype=float)
        if w.sum() <= 0:
            w = np.ones(len(prims))
        cuts = np.concatenate([[0.0], np.cumsum(w) / w.sum()])
        cuts[-1] = 1.0
        return cls(tuple((p, float(cuts[i]), float(cuts[i + 1])) for i, p in enumerate(prims)))

    @classmethod
    def constant(cls, p) -> "PathFn":
        return cls(((Constant(p), 0.0, 1.0),))

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        t = np.clip(np.atleast_1d(np.asarray(t, dtype=float)), 0.0, 1.0)
        idx = np.searchsorted(self._breaks, t, side="right")
        out = None
        for k in np.unique(idx):
            prim, a, b = self.segments[k]
            mask = idx == k
            s = (t[mask] - a) / (b - a) if b > a else np.zeros(mask.sum())
            vals = prim(s)
            if out is None:
                out = np.empty((t.size, vals.shape[1]))
            out[mask] = vals
        return out[0] if scalar else out

    @property
    def start(self) -> np.ndarray:
        return self.segments[0][0].start

    @property
    def end(self) -> np.ndarray:
        return self.segments[-1][0].end

    @property
    def length(self) -> float:
        return sum(p.length for p, _, _ in self.segments)

    @property
    def kinds(self) -> list[str]:
        return [p.kind for p, _, _ in self.segments]

    def primitive(self, kind: str) -> list[tuple[Primitive, float, float]]:
        return [s for s in self.segments if s[0].kind == kind]

    def reversed(self) -> "PathFn":
        return PathFn(tuple((Reversed(p), 1.0 - b, 1.0 - a) for p, a, b in reversed(self.segments)))

    def then(self, other: "PathFn", split: float = 0.5) -> "PathFn":
        segs = [(p, a * split, b * split) for p, a, b in self.segments]
        segs += [(p, split + a * (1 - split), split + b * (1 - split)) for p, a, b in other.segments]
        segs[-1] = (segs[-1][0], segs[-1][1], 1.0)
        return PathFn(tuple(segs))

    def sample(self, k: int = 256) -> tuple[np.ndarray, np.ndarray]:
        t = np.linspace(0.0, 1.0, k)
        return t, self(t)

    def lipschitz_estimate(self, pairs: int = 1000, rng: np.random.Generator | None = None) -> float:
        rng = rng or np.random.default_rng(0)
        t = rng.random(pairs)
        u = np.clip(t + rng.normal(scale=1e-3, size=pairs), 0, 1)
        d = np.linalg.norm(self(t) - self(u), axis=1)
        dt = np.abs(t - u)
        ok = dt > 0
        return float((d[ok] / dt[ok]).max()) if ok.any() else 0.0


def slerp_geodesic(u, v) -> PathFn:
    """Constant-speed shortest great-circle path from ``u`` to ``v``."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ShapeMismatch("points live on spheres of different dimension")
    arc = GreatArc(u, v)
    if arc.angle == 0.0:
        return PathFn.constant(u)
    return PathFn(((arc, 0.0, 1.0),))


# -- multipaths ---------------------------------------------------------------------

@dataclass(frozen=True)
class Multipath:
    """``n`` paths with a common start point."""

    paths: tuple[PathFn, ...]
    tol: float = TOL

    def __post_init__(self):
        paths = tuple(self.paths)
        if not paths:
            raise BadParams("a multipath needs at least one path")
        x0 = paths[0].start
        for k, p in enumerate(paths[1:], 2):
            if np.linalg.norm(p.start - x0) > self.tol:
                raise BadParams(f"path {k} does not start at the common base point")
        object.__setattr__(self, "paths", paths)

    @property
    def n(self) -> int:
        return len(self.paths)

    def starts(self) -> np.ndarray:
        return np.array([p.start for p in self.paths])

    def ends(self) -> np.ndarray:
        return np.array([p.end for p in self.paths])


@dataclass(frozen=True)
class BrokenMultipath:
    """``n`` paths whose start points lie in one orbit.

    With ``patch`` given, ``alpha_i(0) g_i = alpha_{i+1}(0)`` for each ``i``.
    """

    paths: tuple[PathFn, ...]
    action: ActionSpec
    patch: tuple[int, ...] | None = None
    tol: float = TOL

    def __post_init__(self):
        paths = tuple(self.paths)
        object.__setattr__(self, "paths", paths)
        if self.patch is not None:
            patch = tuple(group_element(g) for g in self.patch)
            if len(patch) != len(paths) - 1:
                raise ShapeMismatch("need n-1 patching elements")
            object.__setattr__(self, "patch", patch)
        res = self.patch_residual()
        if res > self.tol:
            what = "patching data" if self.patch is not None else "start points"
            raise BadParams(f"{what} inconsistent: residual {res:.3g}")

    @property
    def n(self) -> int:
        return len(self.paths)

    def patch_residual(self) -> float:
        starts = [p.start for p in self.paths]
        worst = 0.0
        if self.patch is not None:
            for i, g in enumerate(self.patch):
                moved = act_on_vector(self.action, g, starts[i])
                worst = max(worst, float(np.linalg.norm(moved - starts[i + 1])))
        else:
            x0 = starts[0]
            orbit = (x0, act_on_vector(self.action, 1, x0))
            for s in starts[1:]:
                worst = max(worst, min(float(np.linalg.norm(s - o)) for o in orbit))
        return worst

    def starts(self) -> np.ndarray:
        return np.array([p.start for p in self.paths])

    def ends(self) -> np.ndarray:
        return np.array([p.end for p in self.paths])


def sup_distance(p: Multipath | BrokenMultipath, q: Multipath | BrokenMultipath,
                 samples: int = 256) -> float:
    """Largest ambient distance between corresponding paths over ``samples`` equally spaced times."""
    if p.n != q.n:
        raise ShapeMismatch(f"multipaths of lengths {p.n} and {q.n}")
    t = np.linspace(0.0, 1.0, samples)
    worst = 0.0
    for a, b in zip(p.paths, q.paths):
        pa, pb = a(t), b(t)
        if pa.shape != pb.shape:
            raise ShapeMismatch("paths live in different spaces")
        worst = max(worst, float(np.linalg.norm(pa - pb, axis=1).max()))
    return worst


# -- torus strata -----------------------------------------------------------------

def _wrap(a: float) -> float:
    """Angle in (-pi, pi]."""
    a = math.remainder(a, 2 * math.pi)
    return math.pi if a == -math.pi else a


@dataclass(frozen=True)
class StratumData:
    """Landmarks of the half torus ``M_x`` around a base point ``x``."""

    x: TorusPoint
    tol: float = TOL
    b: complex = field(init=False)
    height: complex = field(init=False)
    b_x: TorusPoint = field(init=False)
    a_x: TorusPoint = field(init=False)

    def __post_init__(self):
        b = self.x.h * cmath.exp(-0.5j * math.pi)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "height", -self.x.v)
        bx = TorusPoint(b, -self.x.v)
        object.__setattr__(self, "b_x", bx)
        object.__setattr__(self, "a_x", _torus_antipodal(bx))

    @property
    def anchor_D(self) -> complex:
        return -self.b

    def rel_angle(self, p: TorusPoint) -> float:
        """Horizontal angle of ``p`` measured from ``x'``, in (-pi, pi]."""
        return _wrap(cmath.phase(p.h / self.x.h))

    def in_E(self, p: TorusPoint | None = None) -> bool:
        p = self.x if p is None else p
        return abs(p.v - 1) <= self.tol or abs(p.v + 1) <= self.tol

    def in_M(self, p: TorusPoint) -> bool:
        return abs(self.rel_angle(p)) <= math.pi / 2 + self.tol

    def in_CI(self, p: TorusPoint) -> bool:
        return abs(p.h - self.b) <= self.tol

    def in_CD(self, p: TorusPoint) -> bool:
        return abs(p.h + self.b) <= self.tol

    def in_C(self, p: TorusPoint) -> bool:
        return self.in_M(p) and abs(p.v - self.height) <= self.tol

    def in_A(self, p: TorusPoint) -> bool:
        return self.in_CI(p) or self.in_CD(p) or self.in_C(p)

    def is_a(self, p: TorusPoint) -> bool:
        return torus_distance(p, self.a_x) <= self.tol

    def is_b(self, p: TorusPoint) -> bool:
        return torus_distance(p, self.b_x) <= self.tol

    def to_dict(self) -> dict:
        def c(z):
            return [z.real, z.imag]

        return {"x": c(self.x.h) + c(self.x.v), "CI_anchor": c(self.b), "CD_anchor": c(self.anchor_D),
                "C_height": c(self.height), "b_x": self.b_x.vec().tolist(), "a_x": self.a_x.vec().tolist(),
                "x_in_E": self.in_E()}


def torus_strata(x, tol: float = TOL) -> StratumData:
    return StratumData(as_torus_point(x), tol)


# -- export ---------------------------------------------------------------------------

def multipath_record(mp: Multipath | BrokenMultipath, *, space: str, action: str,
                     inputs: Iterable, domain: str, samples: int = 256,
                     char_tuple: Sequence[int] | None = None) -> dict:
    t = np.linspace(0.0, 1.0, samples)
    rec = {
        "space": space,
        "action": action,
        "n": mp.n,
        "inputs": [list(map(float, p)) for p in inputs],
        "domain": domain,
    }
    patch = getattr(mp, "patch", None)
    if patch is not None:
        rec["patch"] = list(patch)
    if char_tuple is not None:
        rec["char_tuple"] = list(char_tuple)
    rec["paths"] = [{"samples": np.column_stack([t, p(t)]).round(12).tolist()} for p in mp.paths]
    return rec


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))
