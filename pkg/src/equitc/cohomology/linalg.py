"""Exact kernels over F2 and Z, split by degree."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .. import backend
from ..errors import ShapeMismatch, SizeBudgetExceeded
from .algebra import DEFAULT_BUDGET, F2, AlgebraMap, Element, GradedAlgebra


def gf2_nullspace(a: np.ndarray) -> np.ndarray:
    """Rows spanning ``{x : a x = 0}`` over F2."""
    a = np.asarray(a) % 2
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    rref, pivots = backend.kernels.gf2_rref(a.astype(np.uint8))
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, p in enumerate(pivots):
            if rref[r, f]:
                out[i, p] = 1
    return out


def gf2_rank(a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(backend.kernels.gf2_rref((a % 2).astype(np.uint8))[1])


def integer_kernel(a: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    """Lattice basis of ``{x in Z^c : a x = 0}`` by unimodular row reduction of ``[a^T | I]``."""
    rows_a = [list(map(int, r)) for r in a]
    c = cols if cols is not None else (len(rows_a[0]) if rows_a else 0)
    r = len(rows_a)
    # each working row: (image coordinates, transform coordinates)
    work = [([rows_a[i][j] for i in range(r)], [1 if k == j else 0 for k in range(c)]) for j in range(c)]
    top = 0
    for col in range(r):
        while True:
            nz = [i for i in range(top, c) if work[i][0][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(work[i][0][col]))
            work[top], work[piv] = work[piv], work[top]
            p = work[top][0][col]
            done = True
            for i in range(top + 1, c):
                v = work[i][0][col]
                if v:
                    q = v // p
                    work[i] = ([x - q * y for x, y in zip(work[i][0], work[top][0])],
                               [x - q * y for x, y in zip(work[i][1], work[top][1])])
                    if work[i][0][col]:
                        done = False
            if done:
                top += 1
                break
        if top == c:
            break
    return [t for img, t in work[top:] if not any(img)]


def rational_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    m = [list(map(int, v)) for v in vectors if any(v)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            v = m[i][col]
            if v:
                m[i] = [p * x - v * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def kernel_of_maps(maps: Sequence[AlgebraMap], budget: int = DEFAULT_BUDGET) -> list[Element]:
    """Basis of ``∩ ker f`` for maps out of one domain (lattice basis over Z)."""
    if not maps:
        raise ShapeMismatch("need at least one map")
    dom = maps[0].domain
    if any(f.domain != dom for f in maps):
        raise ShapeMismatch("maps must share a domain")
    if dom.dim > budget:
        raise SizeBudgetExceeded(f"domain of size {dom.dim} exceeds budget {budget}")
    out: list[Element] = []
    for k in range(dom.top_degree + 1):
        keys = dom.keys_of_degree(k)
        if len(keys) == 0:
            continue
        blocks = []
        for f in maps:
            ckeys = f.codomain.keys_of_degree(k)
            if len(ckeys) == 0:
                continue
            blocks.append(f.matrix(keys)[ckeys, :])
        if not blocks or not any(np.any(b != 0) for b in blocks):
            out.extend(dom.basis(int(key)) for key in keys)
            continue
        stacked = np.vstack(blocks)
        if dom.coeffs == F2:
            null = gf2_nullspace(stacked.astype(np.int64))
            vecs = [{int(keys[j]): 1 for j in np.nonzero(row)[0]} for row in null]
        else:
            null = integer_kernel(stacked.tolist(), cols=len(keys))
            vecs = [{int(keys[j]): int(c) for j, c in enumerate(row) if c} for row in null]
        out.extend(Element(dom, v) for v in vecs)
    return out


def in_span(basis: Sequence[Element], x: Element) -> bool:
    """Membership of ``x`` in the span of ``basis`` (F2), or in its saturation (Z).

    Kernel lattices are saturated, so rational membership decides lattice membership.
    """
    if x.is_zero():
        return True
    dom = x.ring
    keys = sorted(set().union(*(b.terms for b in basis), x.terms)) if basis else sorted(x.terms)
    keys = np.asarray(keys, dtype=np.int64)
    rows = [b.dense(keys) for b in basis]
    if dom.coeffs == F2:
        return gf2_rank(np.array(rows + [x.dense(keys)])) == gf2_rank(np.array(rows)) if rows else False
    r0 = rational_rank(rows)
    return rational_rank(rows + [x.dense(keys)]) == r0
