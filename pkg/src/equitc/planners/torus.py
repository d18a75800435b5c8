"""Effectual planner for the antipodal involution ``(h, v) -> (-h, conj v)``
on the torus, organized by characteristic tuples.

Vertical circles are oriented clockwise, i.e. by decreasing angle.  Every
leg is a :class:`TorusArc`, and legs share time in proportion to their
length, so paths vary continuously with the input inside a stratum.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import BadParams, UnclassifiablePoint
from ..spaces import (
    TOL, Multipath, PathFn, StratumData, TorusArc, TorusPoint, as_torus_point, torus_distance,
    torus_strata,
)
from .common import DomainIndex

TWO_PI = 2 * math.pi
# distances in (tol, AMBIGUITY * tol] from a stratum are refused as unclassifiable
AMBIGUITY = 100.0


@dataclass(frozen=True)
class CharTuple:
    eps: int
    chi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "chi", tuple(int(c) for c in self.chi))
        if self.eps not in (0, 1) or any(c not in (0, 1, 2) for c in self.chi):
            raise BadParams(f"invalid characteristic tuple {self.as_list()}")

    @property
    def total(self) -> int:
        return self.eps + sum(self.chi)

    def as_list(self) -> list[int]:
        return [self.eps, *self.chi]

    def __str__(self):
        return "(" + ",".join(map(str, self.as_list())) + ")"


def sigma(p: TorusPoint) -> TorusPoint:
    return TorusPoint(-p.h, p.v.conjugate())


def _near(d: float, tol: float, what: str) -> bool:
    if d <= tol:
        return True
    if d <= AMBIGUITY * tol:
        raise UnclassifiablePoint(f"point at distance {d:.3g} from {what}; inside the ambiguity band")
    return False


def _dist_A(st: StratumData, p: TorusPoint) -> float:
    d = min(abs(p.h - st.b), abs(p.h + st.b))
    if abs(st.rel_angle(p)) <= math.pi / 2:
        d = min(d, abs(p.v - st.height))
    return d


def _chi(st: StratumData, z: TorusPoint, tol: float) -> int:
    pre = (z, sigma(z))
    da = [torus_distance(p, st.a_x) for p in pre]
    db = [torus_distance(p, st.b_x) for p in pre]
    if _near(min(da[0] + db[1], da[1] + db[0]), tol, "{a_x, b_x}"):
        return 2
    inside = [p for p in pre if abs(st.rel_angle(p)) <= math.pi / 2 + tol]
    in_a = [_near(_dist_A(st, p), tol, "A_x") for p in inside]
    if all(in_a):
        return 1
    if not any(in_a):
        return 0
    raise UnclassifiablePoint("preimages of one orbit fall on both sides of A_x")


def char_tuple(x, zs: Sequence, tol: float = TOL) -> CharTuple:
    """``(eps, chi_1, ..., chi_{n-1})`` from the stratification around ``x``."""
    st = torus_strata(as_torus_point(x), tol)
    eps = int(_near(min(abs(st.x.v - 1), abs(st.x.v + 1)), tol, "the equator E"))
    return CharTuple(eps, tuple(_chi(st, as_torus_point(z), tol) for z in zs))


def representative(st: StratumData, z, tol: float = TOL) -> TorusPoint:
    """The unique preimage of the orbit of ``z`` in ``M_x`` minus ``C^I_x``."""
    z = as_torus_point(z)
    for p in (z, sigma(z)):
        phi = st.rel_angle(p)
        if -math.pi / 2 + tol < phi <= math.pi / 2 + tol and abs(p.h - st.b) > tol:
            return p
    raise UnclassifiablePoint("no preimage in M_x \\ C^I_x")


class _Walker:
    def __init__(self, p: TorusPoint):
        self.h, self.v = p.h, p.v
        self.legs: list[TorusArc] = []

    def move(self, dh: float = 0.0, dv: float = 0.0):
        self.legs.append(TorusArc(self.h, self.v, dh, dv))
        self.h *= cmath.exp(1j * dh)
        self.v *= cmath.exp(1j * dv)

    def path(self) -> PathFn:
        return PathFn.chain(self.legs)


def _ccw(frm: complex, to: complex) -> float:
    """Counterclockwise angle from ``frm`` to ``to`` in [0, 2 pi)."""
    return cmath.phase(to / frm) % TWO_PI


def _alpha(st: StratumData, eps: int, chi: int, y: TorusPoint, tol: float) -> PathFn:
    x = st.x
    phi = st.rel_angle(y)
    w = _Walker(x)
    if chi == 0:
        # canonical path: horizontal inside M_x, then vertically avoiding -x''
        w.move(dh=phi)
        w.move(dv=cmath.phase(y.v / x.v))
        return w.path()
    w.move(dv=-math.pi)                                   # clockwise semicircle to -x''
    if chi == 1:
        w.move(dh=phi)
        if abs(y.h + st.b) <= tol:                        # y on C^D_x: finish vertically
            turn = _ccw(w.v, y.v)
            if eps == 0:
                avoid = _ccw(w.v, st.a_x.v)
                w.move(dv=turn if turn < avoid else turn - TWO_PI)
            else:
                w.move(dv=turn - TWO_PI if turn > tol else 0.0)
        else:
            w.move(dv=cmath.phase(y.v / w.v))             # float dust only
        return w.path()
    if eps == 0:
        w.move(dh=phi)
        turn = _ccw(w.v, y.v)
        w.move(dv=turn - TWO_PI if turn > 0 else 0.0)
    else:
        w.move(dh=phi, dv=cmath.phase(y.v / w.v))
    return w.path()


def plan_torus_effectual(x, zs: Sequence, tol: float = TOL) -> tuple[DomainIndex, CharTuple, Multipath]:
    """Multipath ``(c_x, alpha_1, ..., alpha_{n-1})`` with ``alpha_i`` ending in the orbit ``z_i``."""
    if len(zs) < 1:
        raise BadParams("need at least one target orbit (n >= 2)")
    x = as_torus_point(x)
    st = torus_strata(x, tol)
    ct = char_tuple(x, zs, tol)
    paths = [PathFn.constant(x.vec())]
    for z, c in zip(zs, ct.chi):
        y = representative(st, z, tol)
        paths.append(_alpha(st, ct.eps, c, y, tol))
    return DomainIndex("D", ct.total), ct, Multipath(tuple(paths))


def torus_representatives(x, zs: Sequence, tol: float = TOL) -> list[TorusPoint]:
    st = torus_strata(as_torus_point(x), tol)
    return [representative(st, z, tol) for z in zs]
