"""Zero-divisor certificates and a brute-force cup-length oracle.

A certificate names one or more ring maps out of a common domain, a list of
factors that should lie in the intersection of their kernels, and the
expected product.  If every factor is a zero divisor and the product is
nonzero, the sectional category is at least ``len(factors) + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import BadParams, BudgetExceeded, ShapeMismatch
from .algebra import F2, AlgebraMap, Element, GradedAlgebra
from .linalg import gf2_rank, kernel_of_maps
from .rings import (
    action_map, build_ring, effectual_pullback, orbital_pullback, quotient_pullback,
    twisted_diagonals,
)

NONZERO = "nonzero"


@dataclass
class Certificate:
    id: str
    targets: tuple[AlgebraMap, ...]
    factors: tuple[Element, ...]
    expected: Element | str = NONZERO
    labels: tuple[str, ...] = ()
    description: str = ""

    def __post_init__(self):
        if isinstance(self.targets, AlgebraMap):
            self.targets = (self.targets,)
        self.targets = tuple(self.targets)
        self.factors = tuple(self.factors)
        if not self.labels:
            self.labels = tuple(str(f) for f in self.factors)

    @property
    def domain(self) -> GradedAlgebra:
        return self.targets[0].domain

    @property
    def claimed_bound(self) -> int:
        return len(self.factors) + 1


@dataclass
class CertificateReport:
    id: str
    factors_in_kernel: list[bool]
    offending: list[str]
    product: str
    product_nonzero: bool
    matches_expected: bool
    passed: bool
    bound: int
    expected: str = NONZERO
    oracle: int | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "factors_in_kernel": self.factors_in_kernel,
            "offending": self.offending,
            "product": self.product,
            "expected": self.expected,
            "product_nonzero": self.product_nonzero,
            "matches_expected": self.matches_expected,
            "passed": self.passed,
            "bound": self.bound,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


def verify_certificate(cert: Certificate) -> CertificateReport:
    dom = cert.domain
    if any(f.domain != dom for f in cert.targets):
        raise ShapeMismatch("certificate targets must share a domain")
    in_kernel = []
    offending = []
    for label, x in zip(cert.labels, cert.factors):
        if x.ring != dom:
            raise ShapeMismatch(f"factor {label} does not live in {dom.name}")
        ok = all(f(x).is_zero() for f in cert.targets)
        in_kernel.append(ok)
        if not ok:
            offending.append(label)
    product = dom.one()
    for x in cert.factors:
        product = product * x
    if isinstance(cert.expected, Element):
        matches = product == cert.expected
        expected = str(cert.expected)
    else:
        matches = not product.is_zero()
        expected = NONZERO
    passed = all(in_kernel) and matches and not product.is_zero()
    return CertificateReport(
        id=cert.id, factors_in_kernel=in_kernel, offending=offending, product=str(product),
        product_nonzero=not product.is_zero(), matches_expected=matches, passed=passed,
        bound=cert.claimed_bound if passed else 1, expected=expected)


def max_cuplength_bruteforce(kernel_basis: Sequence[Element], max_len: int = 32,
                             budget: int = 200_000, extra: Sequence[Element] = (),
                             max_dim: int = 24) -> int:
    """Largest k <= max_len with a nonzero product of k kernel classes (F2 only).

    Powers of the kernel-generated ideal are built breadth first: level k+1 is
    the span of (basis of level k) x (generators), row-reduced.  By
    multilinearity this is exact, not a lower bound.  ``budget`` caps the
    number of products formed.
    """
    gens = [g for g in list(kernel_basis) + list(extra) if not g.is_zero()]
    if not gens:
        return 0
    dom = gens[0].ring
    if dom.coeffs != F2:
        raise BadParams("the brute-force oracle works over F2 only")
    if len(kernel_basis) > max_dim:
        raise BudgetExceeded(f"kernel dimension {len(kernel_basis)} exceeds {max_dim}")
    level = _independent(gens, dom)
    k = 1
    spent = 0
    while k < max_len:
        spent += len(level) * len(gens)
        if spent > budget:
            raise BudgetExceeded(f"more than {budget} products needed")
        nxt = _independent([u * v for u in level for v in gens], dom)
        if not nxt:
            return k
        level = nxt
        k += 1
    return k


def _independent(elements: Sequence[Element], dom: GradedAlgebra) -> list[Element]:
    from .. import backend

    elements = [e for e in elements if not e.is_zero()]
    if not elements:
        return []
    keys = np.asarray(sorted(set().union(*(e.terms for e in elements))), dtype=np.int64)
    m = np.array([e.dense(keys) for e in elements]) % 2
    rref, _ = backend.kernels.gf2_rref(m.astype(np.uint8))
    return [Element(dom, {int(keys[j]): 1 for j in np.nonzero(row)[0]}) for row in rref]


def kernel_cuplength_by_enumeration(kernel_basis: Sequence[Element], max_len: int) -> int:
    """Reference oracle: try every multiset of basis classes, length by length."""
    from itertools import combinations_with_replacement

    basis = [b for b in kernel_basis if not b.is_zero()]
    best = 0
    for k in range(1, max_len + 1):
        if any(not _prod(c).is_zero() for c in combinations_with_replacement(basis, k)):
            best = k
        else:
            break
    return best


def _prod(xs):
    out = xs[0]
    for x in xs[1:]:
        out = out * x
    return out


# -- builtin certificates ---------------------------------------------------

def _parse_all(ring: GradedAlgebra, exprs: Sequence[str]) -> tuple[Element, ...]:
    return tuple(ring.parse(e) for e in exprs)


def sphere_effective(m: int, n: int, action: str = "antipodal") -> Certificate:
    """``W_2 ⋯ W_n ≠ 0`` with ``W_j = w_{1} + w_{j}`` over F2."""
    ring = build_ring("sphere", m)
    gstar = action_map("sphere", action, F2, m)
    targets = twisted_diagonals(ring, gstar, n)
    exprs = [f"w_{{1}} + w_{{{j}}}" for j in range(2, n + 1)]
    return Certificate(f"sphere-{action}-effective(m={m},n={n})", tuple(targets),
                       _parse_all(targets[0].domain, exprs), NONZERO, tuple(exprs),
                       "effective zero divisors on the sphere, F2")


def sphere_effectual(m: int, n: int) -> Certificate:
    """``(α_{2})^m ⋯ (α_{n})^m`` on ``H^*(S^m × (RP^m)^{n-1}; F2)``."""
    total, quot = build_ring("sphere", m), build_ring("rp_F2", m)
    pi = quotient_pullback("sphere", "antipodal", m)
    f = effectual_pullback(total, quot, pi, n)
    exprs = [f"alpha_{{{j}}}" for j in range(2, n + 1) for _ in range(m)]
    top = "alpha^" + str(m) if m > 1 else "alpha"
    expected = "*".join(f"({top})_{{{j}}}" for j in range(2, n + 1))
    dom = f.domain
    exp_el = dom.one()
    for j in range(2, n + 1):
        exp_el = exp_el * dom.gen(top, j)
    return Certificate(f"sphere-antipodal-effectual(m={m},n={n})", (f,), _parse_all(dom, exprs),
                       exp_el, tuple(exprs), f"effectual zero divisors; expected {expected}")


def sphere_orbital(m: int, n: int) -> Certificate:
    """``p_1(α)^m ⋯ p_n(α)^m = α^m ⊗ ⋯ ⊗ α^m`` on ``H^*((RP^m)^n; F2)``."""
    total, quot = build_ring("sphere", m), build_ring("rp_F2", m)
    pi = quotient_pullback("sphere", "antipodal", m)
    f = orbital_pullback(total, quot, pi, n)
    exprs = [f"alpha_{{{j}}}" for j in range(1, n + 1) for _ in range(m)]
    dom = f.domain
    top = "alpha^" + str(m) if m > 1 else "alpha"
    exp_el = dom.tensor([quot.gen(top)] * n)
    return Certificate(f"sphere-antipodal-orbital(m={m},n={n})", (f,), _parse_all(dom, exprs),
                       exp_el, tuple(exprs), "orbital zero divisors p_i(α)")


def surface_usual_effective(g: int, n: int, action: str) -> Certificate:
    """Usual zero divisors ``a_{1,1}+a_{1,i}``, ``b_{1,1}+b_{1,i}`` over F2 (g = 1 rows)."""
    ring = build_ring("surface_F2", g)
    gstar = action_map("surface", action, F2, g)
    targets = twisted_diagonals(ring, gstar, n)
    exprs = []
    for i in range(2, n + 1):
        exprs += [f"a_{{1,1}} + a_{{1,{i}}}", f"b_{{1,1}} + b_{{1,{i}}}"]
    return Certificate(f"surface-{action}-effective(g={g},n={n})", tuple(targets),
                       _parse_all(targets[0].domain, exprs), NONZERO, tuple(exprs),
                       "usual zero divisors; the action is trivial mod 2")


def surface_reflection_effective(g: int, n: int) -> Certificate:
    """``C A_2 B_2 ⋯ A_n B_n ≠ 0`` over F2 for the reflection action, g >= 2."""
    if g < 2:
        raise BadParams("this certificate needs g >= 2")
    ring = build_ring("surface_F2", g)
    gstar = action_map("surface", "reflection", F2, g)
    targets = twisted_diagonals(ring, gstar, n)
    exprs = ["a_{2,1} - a_{2,2}"]
    for i in range(2, n + 1):
        exprs += [f"a_{{1,1}} - a_{{1,{i}}}", f"b_{{1,1}} - b_{{1,{i}}}"]
    return Certificate(f"surface-reflection-effective(g={g},n={n})", tuple(targets),
                       _parse_all(targets[0].domain, exprs), NONZERO, tuple(exprs),
                       "all usual zero divisors but one, F2")


def surface_rotation_effective(l: int, n: int) -> Certificate:
    """``C_1 C_2 A_2 B_2 ⋯ A_n B_n = 2^n c⊗⋯⊗c`` over Z on ``Σ_{2l+1}``."""
    if l < 1:
        raise BadParams("this certificate needs l >= 1")
    g = 2 * l + 1
    ring = build_ring("surface_Z", g)
    gstar = action_map("surface", "rotation", "Z", g)
    targets = twisted_diagonals(ring, gstar, n)
    mid = l + 1
    exprs = [f"a_{{{mid},1}} - a_{{{mid},2}}", f"b_{{{mid},1}} - b_{{{mid},2}}"]
    for i in range(2, n + 1):
        exprs.append(f"(a_{{1,1}} + a_{{{g},1}}) - (a_{{1,{i}}} + a_{{{g},{i}}})")
        exprs.append(f"(b_{{1,1}} + b_{{{g},1}}) - (b_{{1,{i}}} + b_{{{g},{i}}})")
    dom = targets[0].domain
    expected = dom.tensor([ring.gen("c")] * n) * (2**n)
    return Certificate(f"surface-rotation-effective(l={l},n={n})", tuple(targets),
                       _parse_all(dom, exprs), expected, tuple(exprs), "integral, expected 2^n c⊗⋯⊗c")


def torus_antipodal_effectual(n: int) -> Certificate:
    """``(a_{1,1}+b_{1,1}+x_{1,2})^3 ∏_j (x_{1,j}+x_{1,j-1})(x_{1,j}+x_{2,j-1})`` over F2."""
    total, quot = build_ring("surface_F2", 1), build_ring("nonorientable_F2", 2)
    pi = quotient_pullback("surface", "antipodal", 1)
    f = effectual_pullback(total, quot, pi, n)
    dom = f.domain
    first = "a_{1,1} + b_{1,1} + x_{1,2}"
    exprs = [first] * 3
    for j in range(3, n + 1):
        exprs += [f"x_{{1,{j}}} + x_{{1,{j - 1}}}", f"x_{{1,{j}}} + x_{{2,{j - 1}}}"]
    expected = dom.parse("a_{1,1} + b_{1,1}")
    for j in range(2, n + 1):
        expected = expected * dom.parse(f"x_{{1,{j}}}^2")
    return Certificate(f"torus-antipodal-effectual(n={n})", (f,), _parse_all(dom, exprs), expected,
                       tuple(exprs), "expected (a_{1,1}+b_{1,1}) x_{1,2}^2 ⋯ x_{1,n}^2")


def torus_rotation_orbital(n: int) -> Certificate:
    """``b_{1,1} ⋯ b_{1,n} (a_{1,1}+a_{1,2}) ⋯ (a_{1,1}+a_{1,n}) ≠ 0`` over F2."""
    total = build_ring("surface_F2", 1)
    pi = quotient_pullback("surface", "rotation", 1)
    f = orbital_pullback(total, total, pi, n)
    exprs = [f"b_{{1,{j}}}" for j in range(1, n + 1)]
    exprs += [f"a_{{1,1}} + a_{{1,{i}}}" for i in range(2, n + 1)]
    return Certificate(f"torus-rotation-orbital(n={n})", (f,), _parse_all(f.domain, exprs), NONZERO,
                       tuple(exprs), "orbital zero divisors for the rotation double cover")


BUILTIN: dict[str, Callable[..., Certificate]] = {
    "sphere-effective": sphere_effective,
    "sphere-effectual": sphere_effectual,
    "sphere-orbital": sphere_orbital,
    "surface-usual-effective": surface_usual_effective,
    "surface-reflection-effective": surface_reflection_effective,
    "surface-rotation-effective": surface_rotation_effective,
    "torus-antipodal-effectual": torus_antipodal_effectual,
    "torus-rotation-orbital": torus_rotation_orbital,
}


def certificate_kernel(cert: Certificate) -> list:
    return kernel_of_maps(list(cert.targets))


@dataclass
class OracleCase:
    """An oracle-equivalence instance: a map whose kernel cup-length should match a certificate."""

    name: str
    targets: tuple[AlgebraMap, ...]
    certificate_length: int
    notes: str = ""
    extra: tuple = field(default_factory=tuple)


def oracle_cases() -> list[OracleCase]:
    """The n = 2 instances compared against the brute-force oracle."""
    out = []
    for m in (1, 2):
        ring = build_ring("sphere", m)
        cert = sphere_effective(m, 2)
        out.append(OracleCase(f"sphere({m})", tuple(twisted_diagonals(ring, action_map("sphere", "antipodal", F2, m), 2)),
                              len(cert.factors), "effective antipodal = Δ_2^* mod 2"))
    cert = surface_usual_effective(1, 2, "reflection")
    out.append(OracleCase("surface_F2(1)", cert.targets, len(cert.factors), "effective reflection = Δ_2^* mod 2"))
    for m in (2, 3):
        cert = sphere_orbital(m, 2)
        out.append(OracleCase(f"rp_F2({m})", cert.targets, len(cert.factors), "orbital map of S^m -> RP^m"))
    return out


def gf2_span_dim(elements: Sequence[Element]) -> int:
    if not elements:
        return 0
    keys = np.asarray(sorted(set().union(*(e.terms for e in elements))), dtype=np.int64)
    if len(keys) == 0:
        return 0
    return gf2_rank(np.array([e.dense(keys) for e in elements]))


__all__ = [
    "NONZERO", "Certificate", "CertificateReport", "verify_certificate", "max_cuplength_bruteforce",
    "kernel_cuplength_by_enumeration", "BUILTIN", "OracleCase", "oracle_cases", "certificate_kernel",
    "gf2_span_dim", *(f.__name__ for f in BUILTIN.values()),
]
