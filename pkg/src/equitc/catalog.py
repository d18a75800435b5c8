"""Bounds for effective, effectual and orbital TC of Z2-spaces, stored as
intervals, with the certificate or planner that backs each endpoint."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .errors import BadParams, NotInTable

INVARIANTS = ("effv", "effl", "tc_quotient", "orb")
UNDEFINED = "undefined (non-free action)"


@dataclass(frozen=True)
class BoundRecord:
    space: str
    action: str
    n: int
    invariant: str
    lower: int | None
    upper: int | None
    delta_unresolved: bool = False
    sources: tuple[str, ...] = ()
    formula: str = ""
    status: str = "defined"

    def __post_init__(self):
        if self.status == "defined":
            if self.lower is None or self.upper is None or self.lower > self.upper:
                raise BadParams(f"bad interval [{self.lower}, {self.upper}]")
            if self.delta_unresolved and self.upper != self.lower + 1:
                raise BadParams("a delta cell spans exactly two values")

    @property
    def defined(self) -> bool:
        return self.status == "defined"

    def cell(self) -> str:
        if not self.defined:
            return UNDEFINED
        return str(self.lower) if self.lower == self.upper else f"{self.lower}..{self.upper}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sources"] = list(self.sources)
        return d


def cat_upper_bound(hdim: int, conn: int, n: int) -> int:
    """``floor(n * hdim / (conn + 1)) + 1``, the dimension-connectivity bound for ``cat(X^n)``."""
    if hdim < 0 or conn < 0 or n < 1:
        raise BadParams("need hdim >= 0, conn >= 0, n >= 1")
    return n * hdim // (conn + 1) + 1


# -- rows ------------------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    key: str
    label: str
    space: str
    action: str
    cells: dict = field(hash=False)
    free: bool = True
    quotient: str = ""


def _sym(s: str) -> dict:
    return {"formula": s}


ROWS = (
    Row("refl-sphere", "S^m", "sphere", "reflection", {"effv": _sym("n")}, free=False),
    Row("refl-torus", "Σ_1", "surface", "reflection", {"effv": _sym("2n-1")}, free=False),
    Row("refl-surface", "Σ_g (g≥2)", "surface", "reflection", {"effv": _sym("2n+δ")}, free=False),
    Row("rot-torus", "Σ_1", "surface", "rotation",
        {"effv": _sym("2n-1"), "effl": _sym("2n-1"), "orb": _sym("2n+δ")}, quotient="Σ_1"),
    Row("rot-surface", "Σ_{2l+1} (l≥1)", "surface", "rotation",
        {"effv": _sym("2n+1"), "effl": _sym("2n+1"), "orb": _sym("2n+1")}, quotient="Σ_{l+1}"),
    Row("ant-sphere", "S^m", "sphere", "antipodal",
        {"effv": _sym("n"), "effl": _sym("(n-1)m+1+δ"), "orb": _sym("nm+1")}, quotient="RP^m"),
    Row("ant-torus", "Σ_1", "surface", "antipodal",
        {"effv": _sym("2n-1"), "effl": _sym("2n"), "orb": _sym("2n+1")}, quotient="N_2"),
    Row("ant-surface", "Σ_g (g≥2)", "surface", "antipodal",
        {"effv": _sym("2n+δ"), "effl": _sym("2n+δ"), "orb": _sym("2n+1")}, quotient="N_{g+1}"),
)

ACTION_ORDER = ("reflection", "rotation", "antipodal")


def _row_for(space: str, action: str, param: int | None) -> Row:
    if space in ("sphere", "S"):
        key = {"reflection": "refl-sphere", "antipodal": "ant-sphere"}.get(action)
        if key is None:
            raise NotInTable(f"no row for {action} on spheres")
    elif space in ("surface", "torus", "Σ"):
        g = 1 if space == "torus" else param
        if g is None or g < 1:
            raise NotInTable("surfaces need a genus g >= 1")
        if action == "reflection":
            key = "refl-torus" if g == 1 else "refl-surface"
        elif action == "rotation":
            if g % 2 == 0:
                raise NotInTable("the rotation action is free only on odd genus")
            key = "rot-torus" if g == 1 else "rot-surface"
        elif action == "antipodal":
            key = "ant-torus" if g == 1 else "ant-surface"
        else:
            raise NotInTable(f"unknown action {action!r}")
    else:
        raise NotInTable(f"unknown space {space!r}")
    return next(r for r in ROWS if r.key == key)


def _cells(row: Row, n: int, p: int) -> dict[str, tuple[int, int, tuple[str, ...]]]:
    """Numeric intervals with sources for row ``row`` at ``n`` (``p`` = m, g or l)."""
    cb = cat_upper_bound(2, 0, n)
    out: dict[str, tuple[int, int, tuple[str, ...]]] = {}
    k = row.key
    if k == "refl-sphere":
        up = f"planner:sphere-reflection ({n} domains)" if p % 2 == 0 else f"planner:sphere-standard ({n} domains)"
        out["effv"] = (n, n, (f"certificate:sphere-reflection-effective(m={p},n={n})", up))
    elif k == "refl-torus":
        out["effv"] = (2 * n - 1, 2 * n - 1, (f"certificate:surface-reflection-effective(g=1,n={n})",
                                              "reference:TC_n(Σ_1)=2n-1"))
    elif k == "refl-surface":
        out["effv"] = (2 * n, cb, (f"certificate:surface-reflection-effective(g={p},n={n})",
                                   f"formula:cat_upper_bound(2,0,{n})={cb}"))
    elif k == "rot-torus":
        ref = "reference:TC_n(Σ_1)=2n-1"
        out["effv"] = (2 * n - 1, 2 * n - 1, (f"certificate:surface-rotation-effective(g=1,n={n})", ref))
        out["effl"] = (2 * n - 1, 2 * n - 1, ("chain:effv<=effl", ref + " bounds effl from above"))
        out["tc_quotient"] = (2 * n - 1, 2 * n - 1, (ref,))
        out["orb"] = (2 * n, cb, (f"certificate:torus-rotation-orbital(n={n})",
                                  f"formula:cat_upper_bound(2,0,{n})={cb}"))
    elif k == "rot-surface":
        src = (f"certificate:surface-rotation-effective(l={p},n={n})", f"formula:cat_upper_bound(2,0,{n})={cb}")
        out["effv"] = (2 * n + 1, cb, src)
        out["effl"] = (2 * n + 1, cb, ("chain:effv<=effl",) + src[1:])
        out["tc_quotient"] = (2 * n + 1, 2 * n + 1, ("reference:TC_n(Σ_g)=2n+1 for g>=2",))
        out["orb"] = (2 * n + 1, cb, ("chain:tc_quotient<=orb",) + src[1:])
    elif k == "ant-sphere":
        m = p
        out["effv"] = (n, n, (f"certificate:sphere-antipodal-effective(m={m},n={n})",
                              f"planner:sphere-antipodal ({n} domains)"))
        out["effl"] = ((n - 1) * m + 1, (n - 1) * m + 2,
                       (f"certificate:sphere-antipodal-effectual(m={m},n={n})",
                        "reference:cat(S^m x (RP^m)^(n-1)) = (n-1)m+2 by the product inequality"))
        tq = reference_tc_rp(m, n)
        out["tc_quotient"] = tq if tq is not None else ((n - 1) * m + 1, n * m + 1,
                                                        ("chain:effl<=TC_n(RP^m)<=orb (no stored value)",))
        out["orb"] = (n * m + 1, n * m + 1, (f"certificate:sphere-antipodal-orbital(m={m},n={n})",
                                             "reference:cat((RP^m)^n) = nm+1"))
    elif k == "ant-torus":
        ref = "reference:TC_n(N_2)=2n+1"
        out["effv"] = (2 * n - 1, 2 * n - 1, (f"certificate:surface-antipodal-effective(g=1,n={n})",
                                              "reference:TC_n(Σ_1)=2n-1"))
        out["effl"] = (2 * n, 2 * n, (f"certificate:torus-antipodal-effectual(n={n})",
                                      f"planner:torus-effectual ({2 * n} domains)"))
        out["tc_quotient"] = (2 * n + 1, 2 * n + 1, (ref,))
        out["orb"] = (2 * n + 1, cb, ("chain:tc_quotient<=orb", f"formula:cat_upper_bound(2,0,{n})={cb}"))
    elif k == "ant-surface":
        ref = f"reference:TC_n(N_{p + 1})=2n+1"
        out["effv"] = (2 * n, cb, ("reference-only: no certificate (invariant products vanish)",
                                   f"formula:cat_upper_bound(2,0,{n})={cb}"))
        out["effl"] = (2 * n, cb, ("reference-only: lower bound stated without a certificate",
                                   f"formula:cat_upper_bound(2,0,{n})={cb}"))
        out["tc_quotient"] = (2 * n + 1, 2 * n + 1, (ref,))
        out["orb"] = (2 * n + 1, cb, ("chain:tc_quotient<=orb", f"formula:cat_upper_bound(2,0,{n})={cb}"))
    return out


def theorem_table(space: str, action: str, n: int, param: int | None = None) -> list[BoundRecord]:
    """Records for every invariant of the row matching ``(space, action)``.

    ``param`` is m for spheres and the genus g for surfaces (default 1 on
    surfaces, 2 on spheres).
    """
    if n < 2:
        raise BadParams("the table starts at n = 2")
    if param is None:
        param = 2 if space in ("sphere", "S") else 1
    row = _row_for(space, action, param)
    p = (param - 1) // 2 if row.key == "rot-surface" else param
    cells = _cells(row, n, p)
    out = []
    for inv in INVARIANTS:
        formula = row.cells.get(inv, {}).get("formula", "")
        if not row.free and inv != "effv":
            out.append(BoundRecord(row.label, action, n, inv, None, None, formula=formula, status=UNDEFINED))
            continue
        lo, hi, src = cells[inv]
        out.append(BoundRecord(row.label, action, n, inv, lo, hi, "δ" in formula, tuple(src), formula))
    return out


def reference_tc_rp(m: int, n: int):
    if m in (1, 2, 3):
        v = m * (n - 1) + 1
        return (v, v, ("reference:TC_n(RP^m)=m(n-1)+1 for m in {1,2,3}",))
    if m == 4 and n == 2:
        return (8, 8, ("reference:TC_2(RP^4)=Imm(RP^4)+1=8",))
    return None


REFERENCES = (
    ("TC_n(RP^m), m in {1,2,3}", "m(n-1)+1", "known value for low-dimensional projective spaces"),
    ("TC_2(RP^4)", 8, "immersion dimension of RP^4 plus one"),
    ("TC_2(RP^3)", 4, "equals cat(RP^3)"),
    ("TC^{Z2}_{effv,2}(S^4)", 2, "antipodal action"),
    ("TC^{Z2}_{effl,2}(S^4)", "5+δ", "antipodal action"),
    ("TC^{Z2}_{orb,2}(S^4)", 9, "antipodal action, nm+1"),
    ("TC^{Z2}_{orb,2}(S^3)", 7, "antipodal action, nm+1"),
    ("TC_n(Σ_1)", "2n-1", "torus"),
    ("TC_n(Σ_g), g>=2", "2n+1", "orientable surfaces of higher genus"),
    ("TC_n(N_{g+1})", "2n+1", "non-orientable surfaces"),
    ("TC^Σ_n(R^m minus Q_r)", "n+1", "symmetrized TC, realized by the origin-routing planner"),
)


def reference_values() -> list[tuple[str, object, str]]:
    return list(REFERENCES)


@dataclass
class ChainReport:
    key: tuple
    order: list[str]
    intervals: list[tuple[int, int]]
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"key": list(self.key), "order": self.order, "intervals": [list(i) for i in self.intervals],
                "violations": self.violations, "passed": self.passed}


def check_chain(records: Sequence[BoundRecord]) -> ChainReport:
    """Interval version of ``effv <= effl <= TC_n(X/G) <= orb``: each lower end is at most every later upper end."""
    keys = {(r.space, r.action, r.n) for r in records}
    if len(keys) != 1:
        raise BadParams("records must share (space, action, n)")
    by = {r.invariant: r for r in records if r.defined}
    order = [inv for inv in INVARIANTS if inv in by]
    violations = []
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if by[a].lower > by[b].upper:
                violations.append(f"{a} >= {by[a].lower} exceeds {b} <= {by[b].upper}")
    return ChainReport(keys.pop(), order, [(by[i].lower, by[i].upper) for i in order], violations)


def all_rows(n: int, params: Iterable[int] | None = None) -> list[list[BoundRecord]]:
    """Every row instantiated at ``n``; sphere rows for m in ``params`` (default 1..4)."""
    params = list(params or (1, 2, 3, 4))
    out = []
    for row in ROWS:
        if row.space == "sphere":
            for m in params:
                out.append(theorem_table("sphere", row.action, n, m))
        else:
            g = {"refl-torus": 1, "rot-torus": 1, "ant-torus": 1, "refl-surface": 2,
                 "rot-surface": 3, "ant-surface": 2}[row.key]
            out.append(theorem_table("surface", row.action, n, g))
    return out


def markdown_table() -> str:
    """Symbolic table with one line per row, effv | effl | orb."""
    lines = ["| action | space | effv_n | effl_n | orb_n |", "|---|---|---|---|---|"]
    for action in ACTION_ORDER:
        for row in ROWS:
            if row.action != action:
                continue
            cells = [row.cells.get(inv, {}).get("formula", "") for inv in ("effv", "effl", "orb")]
            lines.append(f"| {action} | {row.label} | " + " | ".join(cells) + " |")
    return "\n".join(lines)


def table_json(n: int | None = None) -> dict:
    """Symbolic rows, plus numeric records with sources when ``n`` is given."""
    rows = []
    for row in ROWS:
        rows.append({"action": row.action, "space": row.label,
                     **{inv: row.cells.get(inv, {}).get("formula", "") for inv in ("effv", "effl", "orb")}})
    out: dict = {"rows": rows}
    if n is not None:
        out["records"] = [[r.to_dict() for r in recs] for recs in all_rows(n)]
    return out
