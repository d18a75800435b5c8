"""Numerical checks for planners: section residuals, partition soundness,
within-domain continuity and instability of limits.

Each planner is wrapped in an adapter that knows how to sample inputs,
build inputs exactly on a chosen stratum from a parameter vector, and
measure endpoint residuals.  Perturbations move the parameter vector, so
lower-dimensional strata are explored tangentially and never by rejection.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .errors import BadParams, DomainEscape
from .planners import (
    CharTuple, DomainIndex, char_tuple, farber_counterexample, farber_planner_F2, on_radial,
    plan_euclidean_symmetrized, plan_sphere_antipodal_effective, plan_sphere_reflection_effective,
    plan_sphere_standard, plan_torus_effectual, radial_data,
)
from .planners.euclid import FARBER_EPS
from .planners.torus import sigma
from .spaces import (
    TOL, BrokenMultipath, Multipath, ObstacleSet, PathFn, TorusPoint, sup_distance, torus_strata,
)

SECTION_TOL = 1e-9
FINAL_LIMIT = 0.1
RETRIES = 100
DELTAS = (1e-2, 1e-3, 1e-4)


@dataclass
class PlanOutput:
    domain: DomainIndex
    multipath: Multipath | BrokenMultipath
    char: CharTuple | None = None


@dataclass
class Stratum:
    """Inputs of one stratum: ``realize(params)`` maps a parameter vector to a planner input."""

    label: str
    params: np.ndarray
    realize: Callable[[np.ndarray], Any]


class PlannerAdapter:
    id = "planner"
    family = "?"

    def __init__(self, n: int):
        if n < 2:
            raise BadParams("planners need n >= 2")
        self.n = n

    # overridden per planner
    def plan(self, inp) -> PlanOutput:
        raise NotImplementedError

    def random_input(self, rng: np.random.Generator):
        raise NotImplementedError

    def domain_indices(self) -> list[int]:
        raise NotImplementedError

    def predicates(self) -> dict[int, Callable]:
        raise NotImplementedError

    def stratum(self, index: int, rng: np.random.Generator) -> Stratum:
        raise NotImplementedError

    def endpoint_targets(self, inp) -> list[list[np.ndarray]]:
        """Acceptable endpoints per path (one point, or an orbit)."""
        raise NotImplementedError

    def start_residual(self, inp, out: PlanOutput) -> float:
        mp = out.multipath
        if isinstance(mp, BrokenMultipath):
            return mp.patch_residual()
        s = mp.starts()
        return float(np.linalg.norm(s - s[0], axis=1).max())

    def witness(self, index: int, rng: np.random.Generator):
        st = self.stratum(index, rng)
        return st.realize(st.params)

    def describe(self) -> dict:
        return {"id": self.id, "n": self.n}


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


class _SphereAdapter(PlannerAdapter):
    """Shared machinery: components are either free or tied to the first point."""

    special_label = "special"

    def __init__(self, m: int, n: int):
        super().__init__(n)
        self.m = m

    def tied(self, x1: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def domain_indices(self):
        return list(range(self.n))

    def _count(self, inp) -> int:
        x = np.asarray(inp)
        return int(np.sum(np.linalg.norm(x[1:] - self.tied(x[0]), axis=1) <= TOL))

    def predicates(self):
        return {j: (lambda inp, j=j: self._count(inp) == j) for j in self.domain_indices()}

    def random_input(self, rng):
        x1 = _unit(rng.normal(size=self.m + 1))
        rows = [x1]
        for _ in range(self.n - 1):
            rows.append(self.tied(x1) if rng.random() < 1 / 3 else _unit(rng.normal(size=self.m + 1)))
        return np.array(rows)

    def stratum(self, index, rng):
        d = self.m + 1
        tied = set(rng.choice(self.n - 1, size=self.domain_to_tied(index), replace=False).tolist())
        free = [i for i in range(self.n - 1) if i not in tied]
        params = rng.normal(size=d * (1 + len(free)))

        def realize(p, tied=tied, free=free):
            x1 = _unit(p[:d])
            rows = [x1]
            k = 1
            for i in range(self.n - 1):
                if i in tied:
                    rows.append(self.tied(x1))
                else:
                    rows.append(_unit(p[k * d:(k + 1) * d]))
                    k += 1
            return np.array(rows)

        return Stratum(f"{self.special_label}={sorted(tied)}", params, realize)

    def domain_to_tied(self, index: int) -> int:
        return index

    def endpoint_targets(self, inp):
        return [[p] for p in np.asarray(inp)]


class SphereAntipodalAdapter(_SphereAdapter):
    id = "sphere-antipodal"
    family = "U"
    special_label = "equal"

    def tied(self, x1):
        return x1

    def _count(self, inp):
        x = np.asarray(inp)
        return int(np.sum(np.linalg.norm(x[1:] - x[0], axis=1) > TOL))

    def domain_to_tied(self, index):
        return self.n - 1 - index

    def plan(self, inp):
        d, mp = plan_sphere_antipodal_effective(inp)
        return PlanOutput(d, mp)


class SphereReflectionAdapter(_SphereAdapter):
    id = "sphere-reflection"
    family = "V"
    special_label = "mirror"

    def tied(self, x1):
        y = -np.array(x1)
        y[-1] = x1[-1]
        return y

    def plan(self, inp):
        d, mp = plan_sphere_reflection_effective(inp)
        return PlanOutput(d, mp)


class SphereStandardAdapter(_SphereAdapter):
    id = "sphere-standard"
    family = "S"
    special_label = "antipodal"

    def tied(self, x1):
        return -np.asarray(x1)

    def plan(self, inp):
        d, mp = plan_sphere_standard(inp)
        return PlanOutput(d, mp)


class TorusAdapter(PlannerAdapter):
    """Inputs are ``(x, [z_1, ..., z_{n-1}])`` with torus points."""

    id = "torus-effectual"
    family = "D"
    margin = 0.3

    def domain_indices(self):
        return list(range(2 * self.n))

    def plan(self, inp):
        x, zs = inp
        d, ct, mp = plan_torus_effectual(x, zs)
        return PlanOutput(d, mp, ct)

    def predicates(self):
        def pred(inp, t):
            x, zs = inp
            return char_tuple(x, zs).total == t

        return {t: (lambda inp, t=t: pred(inp, t)) for t in self.domain_indices()}

    def _point(self, kind: str, x: TorusPoint, rng) -> TorusPoint:
        st = torus_strata(x)
        if kind == "a":
            return st.a_x
        if kind == "C":
            return TorusPoint(x.h * np.exp(1j * rng.uniform(-np.pi / 2, np.pi / 2)), -x.v)
        if kind == "CD":
            return TorusPoint(-st.b, x.v * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        return TorusPoint(x.h * np.exp(1j * rng.uniform(-np.pi / 2, np.pi / 2)),
                          x.v * np.exp(1j * rng.uniform(-np.pi, np.pi)))

    def random_input(self, rng):
        if rng.random() < 0.25:
            x = TorusPoint.from_angles(rng.uniform(-np.pi, np.pi), float(rng.choice([0.0, np.pi])))
        else:
            x = TorusPoint.from_angles(*rng.uniform(-np.pi, np.pi, size=2))
        zs = []
        for _ in range(self.n - 1):
            kind = rng.choice(["free", "free", "C", "CD", "a"])
            y = self._point(str(kind), x, rng)
            zs.append(sigma(y) if rng.random() < 0.5 else y)
        return x, zs

    def _tuples(self, t: int) -> list[tuple[int, tuple[int, ...]]]:
        return [(e, c) for e in (0, 1) for c in itertools.product((0, 1, 2), repeat=self.n - 1)
                if e + sum(c) == t]

    def stratum(self, t, rng):
        opts = self._tuples(t)
        eps, chi = opts[rng.integers(len(opts))]
        kinds = []
        for c in chi:
            kinds.append({0: "free", 1: str(rng.choice(["C", "CD"])), 2: "a"}[c])
        flips = rng.random(self.n - 1) < 0.5
        lo = self.margin
        # parameters: x angles, then two per target in stratum coordinates
        a = rng.uniform(-np.pi, np.pi)
        b = float(rng.choice([0.0, np.pi])) if eps else rng.choice([-1, 1]) * rng.uniform(lo, np.pi - lo)
        params = [a, b]
        for k in kinds:
            params += [rng.uniform(-np.pi / 2 + lo, np.pi / 2 - lo), 0.0]
            if k == "free":
                params[-1] = rng.uniform(-np.pi + lo, np.pi - lo)
            elif k == "CD":
                # keep clear of a_x'' = -conj(x''), which sits at relative angle -2b from -x''
                while True:
                    psi = rng.uniform(-np.pi, np.pi)
                    if abs(math.remainder(psi + 2 * b, 2 * np.pi)) > lo and abs(psi) > lo:
                        break
                params[-1] = psi
        params = np.array(params, dtype=float)
        ebar = eps

        def realize(p, kinds=tuple(kinds), flips=tuple(flips)):
            vb = p[1] if not ebar else params[1]
            x = TorusPoint.from_angles(p[0], vb)
            st = torus_strata(x)
            zs = []
            for i, k in enumerate(kinds):
                u, w = p[2 + 2 * i], p[3 + 2 * i]
                if k == "a":
                    y = st.a_x
                elif k == "C":
                    y = TorusPoint(x.h * np.exp(1j * u), -x.v)
                elif k == "CD":
                    y = TorusPoint(-st.b, -x.v * np.exp(1j * w))
                else:
                    y = TorusPoint(x.h * np.exp(1j * u), x.v * np.exp(1j * w))
                zs.append(sigma(y) if flips[i] else y)
            return x, zs

        return Stratum(f"C={[eps, *chi]} kinds={kinds}", params, realize)

    def endpoint_targets(self, inp):
        x, zs = inp
        return [[x.vec()]] + [[z.vec(), sigma(z).vec()] for z in zs]

    def start_residual(self, inp, out):
        x, _ = inp
        return float(np.linalg.norm(out.multipath.starts() - x.vec(), axis=1).max())


class EuclidAdapter(PlannerAdapter):
    id = "euclid"
    family = "F"

    def __init__(self, m: int, n: int, obstacles: ObstacleSet | None = None, r: int = 2, seed: int = 0):
        super().__init__(n)
        if obstacles is None:
            obstacles = default_obstacles(m, r, seed)
        self.m, self.obs = m, obstacles
        self.rd = radial_data(obstacles)

    def describe(self):
        return {"id": self.id, "n": self.n, "m": self.m, "obstacles": self.obs.points.tolist()}

    def domain_indices(self):
        return list(range(self.n + 1))

    def plan(self, inp):
        d, mp = plan_euclidean_symmetrized(inp, self.obs)
        return PlanOutput(d, mp)

    def _count(self, inp):
        x = np.asarray(inp)
        R = self.rd.radials
        along = x @ R.T
        off = np.linalg.norm(x[:, None, :] - along[:, :, None] * R[None, :, :], axis=2)
        return int(np.sum(off.min(axis=1) <= TOL))

    def predicates(self):
        return {i: (lambda inp, i=i: self._count(inp) == i) for i in self.domain_indices()}

    def _radial_point(self, k: int, lam: float) -> np.ndarray:
        return lam * self.obs.points[k]

    def _ok(self, p) -> bool:
        return self.obs.clearance(p) > 0.05 and np.linalg.norm(p) > 0.05

    def _free(self, rng) -> np.ndarray:
        while True:
            p = rng.normal(scale=1.5, size=self.m)
            if self._ok(p) and not on_radial(p, self.rd):
                return p

    def _lam(self, rng, k: int) -> float:
        while True:
            lam = rng.choice([-1, 1]) * rng.uniform(0.2, 2.5)
            if self._ok(self._radial_point(k, lam)):
                return float(lam)

    def random_input(self, rng):
        rows = []
        for _ in range(self.n):
            if rng.random() < 0.3:
                k = int(rng.integers(self.obs.r))
                rows.append(self._radial_point(k, self._lam(rng, k)))
            else:
                rows.append(self._free(rng))
        return np.array(rows)

    def stratum(self, i, rng):
        on = set(rng.choice(self.n, size=i, replace=False).tolist())
        layout, params = [], []
        for c in range(self.n):
            if c in on:
                k = int(rng.integers(self.obs.r))
                layout.append(k)
                params.append([self._lam(rng, k)])
            else:
                layout.append(None)
                params.append(self._free(rng).tolist())
        flat = np.array([v for row in params for v in row])

        def realize(p, layout=tuple(layout)):
            rows, pos = [], 0
            for k in layout:
                if k is None:
                    rows.append(np.array(p[pos:pos + self.m]))
                    pos += self.m
                else:
                    rows.append(self._radial_point(k, p[pos]))
                    pos += 1
            return np.array(rows)

        return Stratum(f"radial={sorted(on)}", flat, realize)

    def endpoint_targets(self, inp):
        return [[p] for p in np.asarray(inp)]

    def start_residual(self, inp, out):
        return float(np.linalg.norm(out.multipath.starts(), axis=1).max())


def default_obstacles(m: int, r: int, seed: int = 0) -> ObstacleSet:
    """``r`` obstacles in R^m with distinct projected radials, off the z-axis."""
    rng = np.random.default_rng(seed)
    angles = np.pi * (np.arange(r) + rng.uniform(0.1, 0.5, size=r)) / r
    pts = []
    for k, a in enumerate(angles):
        p = np.zeros(m)
        p[0], p[1] = math.cos(a) * (1.0 + 0.5 * k), math.sin(a) * (1.0 + 0.5 * k)
        p[2:] = rng.uniform(-1, 1, size=m - 2)
        pts.append(p)
    return ObstacleSet(np.array(pts))


ADAPTERS = {
    "sphere-antipodal": SphereAntipodalAdapter,
    "sphere-reflection": SphereReflectionAdapter,
    "sphere-standard": SphereStandardAdapter,
    "torus-effectual": TorusAdapter,
    "euclid": EuclidAdapter,
}


def make_adapter(planner: str, n: int = 3, m: int | None = None, **kw) -> PlannerAdapter:
    if planner in ("sphere-antipodal", "sphere-reflection", "sphere-standard"):
        default_m = {"sphere-antipodal": 2, "sphere-reflection": 2, "sphere-standard": 3}[planner]
        return ADAPTERS[planner](m or default_m, n)
    if planner == "torus-effectual":
        return TorusAdapter(n)
    if planner == "euclid":
        return EuclidAdapter(m or 3, n, **kw)
    raise BadParams(f"unknown planner {planner!r}; choose from {sorted(ADAPTERS)} or 'farber'")


# -- section -------------------------------------------------------------------

@dataclass
class SectionReport:
    planner: str
    count: int
    max_endpoint: float
    max_start: float
    failures: list[int]
    seed: int | None = None
    tol: float = SECTION_TOL

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {**asdict(self), "passed": self.passed}


def _endpoint_residual(adapter: PlannerAdapter, inp, out: PlanOutput) -> float:
    worst = 0.0
    for path, targets in zip(out.multipath.paths, adapter.endpoint_targets(inp)):
        e = path.end
        worst = max(worst, min(float(np.linalg.norm(e - t)) for t in targets))
    return worst


def check_section(planner: PlannerAdapter, inputs: Sequence, seed: int | None = None,
                  tol: float = SECTION_TOL) -> SectionReport:
    ends, starts, bad = [], [], []
    for k, inp in enumerate(inputs):
        out = planner.plan(inp)
        e, s = _endpoint_residual(planner, inp, out), planner.start_residual(inp, out)
        ends.append(e)
        starts.append(s)
        if e >= tol or s >= tol:
            bad.append(k)
    return SectionReport(planner.id, len(ends), max(ends, default=0.0), max(starts, default=0.0),
                         bad, seed, tol)


def random_inputs(planner: PlannerAdapter, count: int, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    return [planner.random_input(rng) for _ in range(count)]


# -- partition -----------------------------------------------------------------

@dataclass
class PartitionReport:
    count: int
    hits: dict[int, int]
    misses: list[int]
    doubles: list[int]
    mismatches: list[int] = field(default_factory=list)
    witnesses_realized: list[int] = field(default_factory=list)
    expected: list[int] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return (not self.misses and not self.doubles and not self.mismatches
                and sorted(self.witnesses_realized) == sorted(self.expected))

    def to_dict(self):
        d = asdict(self)
        d["hits"] = {str(k): v for k, v in self.hits.items()}
        d["passed"] = self.passed
        return d


def check_partition(domain_predicates: Mapping[int, Callable], sampler: Callable, count: int,
                    seed: int = 0, planner: PlannerAdapter | None = None,
                    witnesses: Sequence | None = None) -> PartitionReport:
    """Every sample must satisfy exactly one predicate (and match the planner's index)."""
    rng = np.random.default_rng(seed)
    hits = {k: 0 for k in domain_predicates}
    misses, doubles, mismatches = [], [], []

    def classify(inp, k):
        which = [j for j, pred in domain_predicates.items() if pred(inp)]
        if not which:
            misses.append(k)
        elif len(which) > 1:
            doubles.append(k)
        else:
            hits[which[0]] += 1
            if planner is not None and planner.plan(inp).domain.index != which[0]:
                mismatches.append(k)
        return which

    for k in range(count):
        classify(sampler(rng), k)
    realized = []
    for k, inp in enumerate(witnesses or ()):
        which = classify(inp, count + k)
        if len(which) == 1:
            realized.append(which[0])
    return PartitionReport(count, hits, misses, doubles, mismatches, sorted(set(realized)),
                           sorted(domain_predicates), seed)


def partition_for(planner: PlannerAdapter, count: int, seed: int = 0) -> PartitionReport:
    rng = np.random.default_rng(seed + 1)
    wit = [planner.witness(i, rng) for i in planner.domain_indices()]
    return check_partition(planner.predicates(), planner.random_input, count, seed, planner, wit)


# -- continuity ------------------------------------------------------------------

@dataclass
class ContinuityReport:
    planner: str
    domain: str
    bases: int
    deltas: list[float]
    max_distance: list[float]
    monotone: bool
    lipschitz: float
    seed: int
    retries: int = 0
    final_limit: float = FINAL_LIMIT

    @property
    def passed(self) -> bool:
        return self.monotone and self.max_distance[-1] < self.final_limit

    def to_dict(self):
        return {**asdict(self), "passed": self.passed}


def _same_cell(a: PlanOutput, b: PlanOutput) -> bool:
    return a.domain == b.domain and a.char == b.char


def continuity_sweep(planner: PlannerAdapter, domain: int, bases: int = 500,
                     deltas: Sequence[float] = DELTAS, seed: int = 0, samples: int = 128) -> ContinuityReport:
    """Worst sup-distance between plans of a base input and its perturbation, per delta.

    Perturbations act on stratum parameters along one random unit direction per
    base point, so the perturbed input stays on the base point's stratum.
    """
    deltas = list(deltas)
    if any(b <= a for a, b in zip(deltas[1:], deltas)) and len(deltas) > 1:
        raise BadParams("deltas must be strictly decreasing")
    rng = np.random.default_rng(seed)
    worst = [0.0] * len(deltas)
    ratio = 0.0
    retries = 0
    for _ in range(bases):
        st = planner.stratum(domain, rng)
        base_out = planner.plan(st.realize(st.params))
        for attempt in range(RETRIES + 1):
            if attempt == RETRIES:
                raise DomainEscape(f"{planner.id}: perturbations keep leaving {st.label}")
            direction = rng.normal(size=st.params.size)
            direction /= np.linalg.norm(direction)
            outs = []
            for d in deltas:
                out = planner.plan(st.realize(st.params + d * direction))
                if not _same_cell(out, base_out):
                    break
                outs.append(out)
            if len(outs) == len(deltas):
                break
            retries += 1
        for k, (d, out) in enumerate(zip(deltas, outs)):
            dist = sup_distance(base_out.multipath, out.multipath, samples) if d > 0 else 0.0
            worst[k] = max(worst[k], dist)
            if d > 0:
                ratio = max(ratio, dist / d)
    monotone = all(b <= a for a, b in zip(worst, worst[1:]))
    return ContinuityReport(planner.id, f"{planner.family}_{domain}", bases, deltas, worst, monotone,
                            ratio, seed, retries)


# -- instability -------------------------------------------------------------------

@dataclass
class InstabilityReport:
    length: int
    trace: list[float]
    input_gaps: list[float]
    threshold: float
    tail_min: float
    verdict: str

    @property
    def unstable(self) -> bool:
        return self.verdict == "unstable"

    def to_dict(self):
        return asdict(self)


def _as_multipath(x) -> Multipath | BrokenMultipath:
    if isinstance(x, PathFn):
        return Multipath((x,))
    if isinstance(x, tuple):
        for part in x:
            if isinstance(part, (Multipath, BrokenMultipath, PathFn)):
                return _as_multipath(part)
    return x


def _flat(inp) -> np.ndarray:
    return np.concatenate([np.ravel(np.asarray(p, dtype=float)) for p in inp])


def detect_instability(planner: Callable, sequence: Sequence, limit, samples: int = 256,
                       tail: int | None = None) -> InstabilityReport:
    """Unstable iff the tail of sup-distances to the limit plan stays above
    ``max(10 * final input gap, 1e-3)``."""
    ref = _as_multipath(planner(limit))
    trace = [sup_distance(_as_multipath(planner(s)), ref, samples) for s in sequence]
    gaps = [float(np.linalg.norm(_flat(s) - _flat(limit))) for s in sequence]
    if not trace:
        return InstabilityReport(0, [], [], 1e-3, 0.0, "stable")
    threshold = max(10 * gaps[-1], 1e-3)
    tail = tail or max(3, len(trace) // 4)
    tail_min = min(trace[-tail:])
    verdict = "unstable" if tail_min > threshold else "stable"
    return InstabilityReport(len(trace), trace, gaps, threshold, tail_min, verdict)


def farber_instability(k: int = 20) -> InstabilityReport:
    ce = farber_counterexample(k)
    return detect_instability(lambda ab: farber_planner_F2(ab[0], ab[1], ce.obstacles, FARBER_EPS),
                              ce.pairs, ce.limit)


def fixed_planner_stability(k: int = 20) -> dict[str, InstabilityReport]:
    """The symmetrized planner on the same geometry, one report per domain F_i of the sequence."""
    ce = farber_counterexample(k)
    adapter = EuclidAdapter(3, 2, ce.obstacles)
    lim_dom = adapter.plan(list(ce.limit)).domain
    groups: dict[str, list] = {}
    for ab in ce.pairs:
        d = adapter.plan(list(ab)).domain
        groups.setdefault(str(d), []).append(ab)
    out = {}
    for d, seq in groups.items():
        if d != str(lim_dom):
            continue
        out[d] = detect_instability(lambda ab: adapter.plan(list(ab)).multipath, seq, ce.limit)
    return out


# -- convenience ------------------------------------------------------------------

def domain_count(planner: PlannerAdapter, seed: int = 0) -> int:
    """Number of distinct domain indices realized on one witness per claimed index."""
    rng = np.random.default_rng(seed)
    return len({planner.plan(planner.witness(i, rng)).domain.index for i in planner.domain_indices()})


def run_checks(planner: str, checks: Sequence[str], samples: int = 1000, seed: int = 0,
               n: int = 3, m: int | None = None, bases: int = 100) -> dict:
    """Machine-readable bundle of checks for the CLI."""
    report: dict[str, Any] = {"planner": planner, "seed": seed, "checks": {}}
    ok = True
    if planner == "farber":
        for c in checks:
            if c != "instability":
                raise BadParams("the Farber planner supports only the instability check")
        rep = farber_instability()
        report["checks"]["instability"] = rep.to_dict()
        report["passed"] = not rep.unstable
        return report
    ad = make_adapter(planner, n=n, m=m)
    report["config"] = ad.describe()
    for c in checks:
        if c == "section":
            rep = check_section(ad, random_inputs(ad, samples, seed), seed)
            d = rep.to_dict()
        elif c == "partition":
            rep = partition_for(ad, samples, seed)
            d = rep.to_dict()
        elif c == "continuity":
            reps = [continuity_sweep(ad, i, bases=bases, seed=seed + i) for i in ad.domain_indices()]
            d = {"domains": [r.to_dict() for r in reps], "passed": all(r.passed for r in reps)}
        elif c == "instability":
            reps = fixed_planner_stability() if planner == "euclid" else {}
            if planner != "euclid":
                raise BadParams("instability sweeps are defined for 'farber' and 'euclid'")
            d = {k: r.to_dict() for k, r in reps.items()}
            d["passed"] = all(not r.unstable for r in reps.values())
        else:
            raise BadParams(f"unknown check {c!r}")
        ok = ok and d["passed"]
        report["checks"][c] = d
    report["passed"] = ok
    return report
