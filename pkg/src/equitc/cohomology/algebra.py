"""Finite-basis graded-commutative algebras over F2 or Z.

A ring is a tensor product of one or more *factors*.  Each factor has a
monomial basis whose pairwise products are a signed multiple of a single
basis element (or zero); that covers every ring in scope and lets tensor
powers be multiplied slot by slot without materialising their structure
constants.  A basis element of the full ring is a tuple of factor indices,
encoded as a single mixed-radix integer key.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .. import backend
from ..errors import BadParams, NotMultiplicative, ShapeMismatch, SizeBudgetExceeded

F2 = "F2"
Z = "Z"
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True, eq=False)
class RingTable:
    """One tensor factor: basis names, degrees and a monomial product table.

    ``prod_idx[i, j]`` is the basis index of ``e_i e_j`` (``-1`` for zero) and
    ``prod_coef[i, j]`` its coefficient.
    """

    name: str
    coeffs: str
    names: tuple[str, ...]
    degrees: np.ndarray
    prod_idx: np.ndarray
    prod_coef: np.ndarray
    unit: int = 0

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadParams(f"{name!r} is not a basis element of {self.name}") from None

    def check(self) -> None:
        """Validate unit, degree additivity, graded commutativity and associativity."""
        d = self.dim
        signed = self.coeffs == Z
        for i in range(d):
            if self.prod_idx[self.unit, i] != i or self.prod_coef[self.unit, i] != 1:
                raise BadParams(f"{self.name}: unit does not act as identity on {self.names[i]}")
            if self.prod_idx[i, self.unit] != i or self.prod_coef[i, self.unit] != 1:
                raise BadParams(f"{self.name}: unit does not act as identity on {self.names[i]}")
        for i, j in itertools.product(range(d), repeat=2):
            k = self.prod_idx[i, j]
            if k >= 0 and self.degrees[k] != self.degrees[i] + self.degrees[j]:
                raise BadParams(f"{self.name}: product {self.names[i]}*{self.names[j]} breaks degree")
            sign = -1 if signed and (self.degrees[i] * self.degrees[j]) % 2 else 1
            lhs = self._vec(i, j)
            rhs = {key: sign * c for key, c in self._vec(j, i).items()}
            if _reduce(lhs, self.coeffs) != _reduce(rhs, self.coeffs):
                raise BadParams(f"{self.name}: graded commutativity fails on {self.names[i]}, {self.names[j]}")
        for i, j, k in itertools.product(range(d), repeat=3):
            left = {}
            for key, c in self._vec(i, j).items():
                for key2, c2 in self._vec(key, k).items():
                    left[key2] = left.get(key2, 0) + c * c2
            right = {}
            for key, c in self._vec(j, k).items():
                for key2, c2 in self._vec(i, key).items():
                    right[key2] = right.get(key2, 0) + c * c2
            if _reduce(left, self.coeffs) != _reduce(right, self.coeffs):
                raise BadParams(f"{self.name}: associativity fails on a basis triple")

    def _vec(self, i: int, j: int) -> dict[int, int]:
        k = int(self.prod_idx[i, j])
        return {} if k < 0 else {k: int(self.prod_coef[i, j])}


def _reduce(terms: Mapping[int, int], coeffs: str) -> dict[int, int]:
    if coeffs == F2:
        return {k: 1 for k, c in terms.items() if c % 2}
    return {k: c for k, c in terms.items() if c}


def ring_table(name: str, coeffs: str, names: Sequence[str], degrees: Sequence[int],
               products: Mapping[tuple[str, str], tuple[int, str]], check: bool = True) -> RingTable:
    """Build a factor from the nonzero products ``(u, v) -> (coef, w)``.

    Products with the unit are filled in automatically; anything not listed is zero.
    """
    if coeffs not in (F2, Z):
        raise BadParams(f"unknown coefficient ring {coeffs!r}")
    d = len(names)
    idx = {nm: i for i, nm in enumerate(names)}
    prod_idx = np.full((d, d), -1, dtype=np.int64)
    prod_coef = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        prod_idx[0, i] = prod_idx[i, 0] = i
        prod_coef[0, i] = prod_coef[i, 0] = 1
    for (u, v), (c, w) in products.items():
        if coeffs == F2:
            c %= 2
        if c:
            prod_idx[idx[u], idx[v]] = idx[w]
            prod_coef[idx[u], idx[v]] = c
    table = RingTable(name, coeffs, tuple(names), np.asarray(degrees, dtype=np.int64),
                      prod_idx, prod_coef)
    if check:
        table.check()
    return table


class GradedAlgebra:
    """Tensor product of :class:`RingTable` factors sharing one coefficient ring."""

    def __init__(self, factors: Sequence[RingTable], name: str | None = None,
                 budget: int = DEFAULT_BUDGET):
        if not factors:
            raise BadParams("need at least one factor")
        coeffs = {f.coeffs for f in factors}
        if len(coeffs) != 1:
            raise ShapeMismatch("factors over different coefficient rings")
        self.factors = tuple(factors)
        self.coeffs = coeffs.pop()
        dims = [f.dim for f in factors]
        size = int(np.prod(dims, dtype=object))
        if size > budget:
            raise SizeBudgetExceeded(f"basis of size {size} exceeds budget {budget}")
        self.dim = size
        self.name = name or " ⊗ ".join(f.name for f in factors)
        self.radix = np.asarray(dims, dtype=np.int64)
        # slot 0 is the most significant digit
        self.stride = np.asarray([int(np.prod(dims[s + 1:], dtype=np.int64)) for s in range(len(dims))],
                                 dtype=np.int64)
        self._poff = np.cumsum([0] + [d * d for d in dims[:-1]]).astype(np.int64)
        self._doff = np.cumsum([0] + dims[:-1]).astype(np.int64)
        self._prod_idx = np.concatenate([f.prod_idx.ravel() for f in factors]).astype(np.int64)
        self._prod_coef = np.concatenate([f.prod_coef.ravel() for f in factors]).astype(np.int64)
        self._degs = np.concatenate([f.degrees for f in factors]).astype(np.int64)

    def __repr__(self):
        return f"GradedAlgebra({self.name}, {self.coeffs}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return len(self.factors) == len(other.factors) and all(
            a is b for a, b in zip(self.factors, other.factors))

    def __hash__(self):
        return hash(tuple(id(f) for f in self.factors))

    @property
    def nslots(self) -> int:
        return len(self.factors)

    @property
    def modulus(self) -> int:
        return 2 if self.coeffs == F2 else 0

    # -- basis bookkeeping ------------------------------------------------
    def encode(self, digits: Sequence[int]) -> int:
        return int(sum(int(d) * int(s) for d, s in zip(digits, self.stride)))

    def decode(self, key: int) -> tuple[int, ...]:
        return tuple(int(key // s % r) for s, r in zip(self.stride, self.radix))

    @cached_property
    def unit_key(self) -> int:
        return self.encode([f.unit for f in self.factors])

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree of every basis key, as a flat array of length ``dim``."""
        deg = np.zeros(1, dtype=np.int64)
        for f in self.factors:
            deg = (deg[:, None] + f.degrees[None, :]).ravel()
        return deg

    def degree_of(self, key: int) -> int:
        return int(sum(f.degrees[d] for f, d in zip(self.factors, self.decode(key))))

    @cached_property
    def top_degree(self) -> int:
        return int(sum(int(f.degrees.max()) for f in self.factors))

    def basis_name(self, key: int) -> str:
        digits = self.decode(key)
        if self.nslots == 1:
            return self.factors[0].names[digits[0]]
        return "⊗".join(f.names[d] for f, d in zip(self.factors, digits))

    # -- element construction ---------------------------------------------
    def element(self, terms: Mapping[int, int] | None = None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_key: 1})

    def basis(self, key: int) -> "Element":
        return Element(self, {int(key): 1})

    def gen(self, name: str, slot: int = 1) -> "Element":
        """Basis class ``name`` of factor ``slot`` (1-based) placed in that slot."""
        if not 1 <= slot <= self.nslots:
            raise BadParams(f"slot {slot} out of range 1..{self.nslots}")
        digits = [f.unit for f in self.factors]
        digits[slot - 1] = self.factors[slot - 1].index(name)
        return self.basis(self.encode(digits))

    def parse(self, text: str) -> "Element":
        from .expr import parse_element

        return parse_element(self, text)

    # -- arithmetic -----------------------------------------------------------
    def _mul(self, x: "Element", y: "Element") -> "Element":
        if not x.terms or not y.terms:
            return self.zero()
        ka, ca = x.arrays()
        kb, cb = y.arrays()
        keys, coefs = backend.kernels.tensor_mul_pairs(
            ka, ca, kb, cb, self.radix, self.stride, self._poff, self._doff,
            self._prod_idx, self._prod_coef, self._degs, self.coeffs == Z, self.modulus)
        return Element(self, _combine(keys, coefs, self.modulus))

    def tensor(self, parts: Sequence["Element"]) -> "Element":
        """``x_1 ⊗ ... ⊗ x_n`` for elements of the single-slot factor rings."""
        if len(parts) != self.nslots:
            raise ShapeMismatch("wrong number of tensor parts")
        terms = {0: 1}
        for s, part in enumerate(parts):
            if part.ring.nslots != 1 or part.ring.factors[0] is not self.factors[s]:
                raise ShapeMismatch(f"part {s + 1} does not live in factor {self.factors[s].name}")
            new = {}
            for key, c in terms.items():
                for k2, c2 in part.terms.items():
                    nk = key + k2 * int(self.stride[s])
                    new[nk] = new.get(nk, 0) + c * c2
            terms = new
        return Element(self, terms)

    def keys_of_degree(self, k: int) -> np.ndarray:
        return np.nonzero(self.degrees == k)[0]

    def check(self, sample: int | None = None, seed: int = 0) -> None:
        """Graded commutativity and associativity on basis pairs/triples.

        All triples are checked when ``dim**3`` is at most ``sample`` (or when
        ``sample`` is None); otherwise a seeded random sample of that size.
        """
        rng = np.random.default_rng(seed)
        dim = self.dim
        if sample is None or dim**3 <= sample:
            triples = itertools.product(range(dim), repeat=3)
        else:
            triples = (tuple(int(t) for t in rng.integers(0, dim, 3)) for _ in range(sample))
        signed = self.coeffs == Z
        for i, j, k in triples:
            a, b, c = self.basis(i), self.basis(j), self.basis(k)
            if (a * b) * c != a * (b * c):
                raise BadParams(f"associativity fails on {self.basis_name(i)}, "
                                f"{self.basis_name(j)}, {self.basis_name(k)}")
            sign = -1 if signed and (self.degree_of(i) * self.degree_of(j)) % 2 else 1
            if a * b != (b * a) * sign:
                raise BadParams(f"graded commutativity fails on {self.basis_name(i)}, {self.basis_name(j)}")
        one = self.one()
        for i in range(min(dim, 64)):
            if one * self.basis(i) != self.basis(i):
                raise BadParams("unit does not act as identity")


def _combine(keys: np.ndarray, coefs: np.ndarray, modulus: int) -> dict[int, int]:
    if len(keys) == 0:
        return {}
    uniq, inv = np.unique(keys, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, inv, coefs)
    if modulus:
        sums %= modulus
    return {int(k): int(c) for k, c in zip(uniq, sums) if c}


class Element:
    """Immutable ring element: a sparse map from basis key to coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedAlgebra, terms: Mapping[int, int]):
        self.ring = ring
        self.terms = _reduce({int(k): int(c) for k, c in terms.items()}, ring.coeffs)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        keys = np.fromiter(self.terms.keys(), dtype=np.int64, count=len(self.terms))
        coefs = np.fromiter(self.terms.values(), dtype=np.int64, count=len(self.terms))
        return keys, coefs

    def _same(self, other: "Element") -> None:
        if other.ring != self.ring:
            raise ShapeMismatch(f"elements of {self.ring.name} and {other.ring.name}")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Element(self.ring, out)

    def __neg__(self) -> "Element":
        return Element(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, np.integer)):
            return Element(self.ring, {k: c * int(other) for k, c in self.terms.items()})
        self._same(other)
        return self.ring._mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Element":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return other.ring == self.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.degree_of(k) for k in self.terms}

    def dense(self, keys: np.ndarray | None = None) -> np.ndarray:
        """Coefficient vector over all basis keys (or the given subset)."""
        if keys is None:
            v = np.zeros(self.ring.dim, dtype=object if self.ring.coeffs == Z else np.int64)
            for k, c in self.terms.items():
                v[k] = c
            return v
        pos = {int(k): i for i, k in enumerate(keys)}
        v = np.zeros(len(keys), dtype=np.int64)
        for k, c in self.terms.items():
            if k not in pos:
                raise ShapeMismatch("element has terms outside the requested keys")
            v[pos[k]] = c
        return v

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            name = self.ring.basis_name(k)
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{name}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def tensor_power(ring: GradedAlgebra, n: int, budget: int = DEFAULT_BUDGET) -> GradedAlgebra:
    """``ring^{⊗n}`` with Koszul signs; ``ring`` must have a single factor."""
    if n < 1:
        raise BadParams("n must be at least 1")
    if ring.nslots != 1:
        raise BadParams("tensor_power expects a single-factor ring")
    return GradedAlgebra(ring.factors * n, name=f"({ring.name})^⊗{n}", budget=budget)


def tensor_product(rings: Sequence[GradedAlgebra], budget: int = DEFAULT_BUDGET) -> GradedAlgebra:
    factors = []
    for r in rings:
        factors.extend(r.factors)
    return GradedAlgebra(factors, budget=budget)


class AlgebraMap:
    """Degree-preserving unital ring map, given by its values on basis keys.

    Multiplicativity is checked at construction on all basis pairs when the
    domain has at most ``full_check`` basis elements, otherwise on a seeded
    sample of ``sample`` pairs.
    """

    def __init__(self, domain: GradedAlgebra, codomain: GradedAlgebra,
                 on_basis: Callable[[int], Element] | Mapping[int, Element],
                 name: str = "", check: bool = True, full_check: int = 96,
                 sample: int = 400, seed: int = 0):
        if domain.coeffs != codomain.coeffs:
            raise ShapeMismatch("maps must preserve the coefficient ring")
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self._cache: dict[int, Element] = {}
        if isinstance(on_basis, Mapping):
            table = dict(on_basis)
            self._fn = lambda k: table.get(k, codomain.zero())
        else:
            self._fn = on_basis
        if check:
            self._check(full_check, sample, seed)

    def image_of_basis(self, key: int) -> Element:
        key = int(key)
        if key not in self._cache:
            img = self._fn(key)
            if img.ring != self.codomain:
                raise ShapeMismatch(f"{self.name}: image not in the codomain")
            self._cache[key] = img
        return self._cache[key]

    def __call__(self, x: Element) -> Element:
        if x.ring != self.domain:
            raise ShapeMismatch(f"{self.name}: argument lives in {x.ring.name}, not {self.domain.name}")
        out: dict[int, int] = {}
        for k, c in x.terms.items():
            for k2, c2 in self.image_of_basis(k).terms.items():
                out[k2] = out.get(k2, 0) + c * c2
        return Element(self.codomain, out)

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """``self ∘ inner``."""
        if inner.codomain != self.domain:
            raise ShapeMismatch("composition of incompatible maps")
        return AlgebraMap(inner.domain, self.codomain, lambda k: self(inner.image_of_basis(k)),
                          name=f"{self.name}∘{inner.name}", check=False)

    def matrix(self, keys: np.ndarray | None = None) -> np.ndarray:
        """Matrix (codomain.dim x len(keys)) of the map restricted to ``keys``."""
        if keys is None:
            keys = np.arange(self.domain.dim)
        dtype = object if self.domain.coeffs == Z else np.int64
        m = np.zeros((self.codomain.dim, len(keys)), dtype=dtype)
        for j, k in enumerate(keys):
            for k2, c in self.image_of_basis(int(k)).terms.items():
                m[k2, j] = c
        return m

    def _check(self, full_check: int, sample: int, seed: int) -> None:
        dom, cod = self.domain, self.codomain
        if self.image_of_basis(dom.unit_key) != cod.one():
            raise NotMultiplicative(f"{self.name}: not unital")
        keys = range(dom.dim)
        for k in keys if dom.dim <= full_check else np.random.default_rng(seed).integers(0, dom.dim, sample):
            img = self.image_of_basis(int(k))
            want = dom.degree_of(int(k))
            if any(d != want for d in img.degrees()):
                raise NotMultiplicative(f"{self.name}: not degree preserving on {dom.basis_name(int(k))}")
        if dom.dim <= full_check:
            pairs: Iterable = itertools.product(keys, repeat=2)
        else:
            rng = np.random.default_rng(seed)
            pairs = (tuple(int(t) for t in rng.integers(0, dom.dim, 2)) for _ in range(sample))
        for i, j in pairs:
            lhs = self(dom.basis(i) * dom.basis(j))
            rhs = self.image_of_basis(i) * self.image_of_basis(j)
            if lhs != rhs:
                raise NotMultiplicative(
                    f"{self.name}: f({dom.basis_name(i)}*{dom.basis_name(j)}) = {lhs} but products give {rhs}")

    def is_identity(self) -> bool:
        if self.domain != self.codomain:
            return False
        return all(self.image_of_basis(k) == self.domain.basis(k) for k in range(self.domain.dim))


def identity_map(ring: GradedAlgebra) -> AlgebraMap:
    return AlgebraMap(ring, ring, ring.basis, name="id", check=False)


def tensor_maps(maps: Sequence[AlgebraMap], domain: GradedAlgebra | None = None,
                codomain: GradedAlgebra | None = None, check: bool = False) -> AlgebraMap:
    """``f_1 ⊗ ... ⊗ f_n`` between tensor products of the maps' (single-factor) rings."""
    domain = domain or tensor_product([f.domain for f in maps])
    codomain = codomain or tensor_product([f.codomain for f in maps])
    if domain.nslots != len(maps) or codomain.nslots != len(maps):
        raise ShapeMismatch("one map per tensor slot required")

    def on_basis(key: int) -> Element:
        digits = domain.decode(key)
        return codomain.tensor([f.image_of_basis(d) for f, d in zip(maps, digits)])

    return AlgebraMap(domain, codomain, on_basis, name="⊗".join(f.name or "f" for f in maps), check=check)


def diagonal_pullback(ring: GradedAlgebra, n: int, domain: GradedAlgebra | None = None,
                      budget: int = DEFAULT_BUDGET) -> AlgebraMap:
    """``Δ_n^*``: ``u_1⊗...⊗u_n ↦ u_1 u_2 ... u_n``."""
    domain = domain or tensor_power(ring, n, budget=budget)
    if domain.nslots != n:
        raise ShapeMismatch("domain must have n slots")

    def on_basis(key: int) -> Element:
        out = ring.one()
        for d in domain.decode(key):
            out = out * ring.basis(d)
        return out

    return AlgebraMap(domain, ring, on_basis, name=f"Δ{n}*", check=False)


@dataclass
class KernelData:
    """Basis of the kernel of one or more maps out of a common domain."""

    domain: GradedAlgebra
    vectors: list[Element] = field(default_factory=list)

    def __len__(self):
        return len(self.vectors)
