"""Preset cohomology rings, induced action maps, and the composite pullbacks
whose kernels hold effective, effectual and orbital zero divisors."""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Mapping

from ..errors import BadParams, ShapeMismatch, UnsupportedPair
from .algebra import (
    DEFAULT_BUDGET, F2, Z, AlgebraMap, Element, GradedAlgebra, diagonal_pullback, ring_table,
    tensor_maps, tensor_power, tensor_product,
)
from .linalg import kernel_of_maps

PRESETS = ("sphere", "surface_Z", "surface_F2", "rp_F2", "nonorientable_F2")


_NATIVE = {"surface_Z": Z, "surface_F2": F2, "rp_F2": F2, "nonorientable_F2": F2}


def build_ring(preset: str, param: int, coeffs: str | None = None) -> GradedAlgebra:
    """Cached preset ring; repeated calls return the same object.

    ``sphere(m)`` defaults to F2 coefficients; pass ``coeffs="Z"`` for integral.
    """
    if preset == "sphere":
        coeffs = coeffs or F2
    elif preset in _NATIVE:
        if coeffs is not None and coeffs != _NATIVE[preset]:
            raise BadParams(f"{preset} is only available over {_NATIVE[preset]}")
        coeffs = _NATIVE[preset]
    else:
        raise BadParams(f"unknown preset {preset!r}; choose from {PRESETS}")
    return _build_ring(preset, int(param), coeffs)


@lru_cache(maxsize=None)
def _build_ring(preset: str, param: int, coeffs: str) -> GradedAlgebra:
    if preset == "sphere":
        m = param
        if m < 1:
            raise BadParams("sphere needs m >= 1")
        t = ring_table(f"H*(S^{m};{coeffs})", coeffs, ["1", "w"], [0, m], {})
    elif preset in ("surface_Z", "surface_F2"):
        g = param
        if g < 1:
            raise BadParams("surface needs genus >= 1")
        names = ["1"] + [f"a{i}" for i in range(1, g + 1)] + [f"b{i}" for i in range(1, g + 1)] + ["c"]
        prods = {}
        for i in range(1, g + 1):
            prods[(f"a{i}", f"b{i}")] = (1, "c")
            prods[(f"b{i}", f"a{i}")] = (-1, "c")
        t = ring_table(f"H*(Σ_{g};{coeffs})", coeffs, names, [0] + [1] * (2 * g) + [2], prods)
    elif preset == "rp_F2":
        m = param
        if m < 1:
            raise BadParams("rp needs m >= 1")
        names = ["1", "alpha"] + [f"alpha^{k}" for k in range(2, m + 1)]
        prods = {(names[i], names[j]): (1, names[i + j])
                 for i in range(1, m + 1) for j in range(1, m + 1) if i + j <= m}
        t = ring_table(f"H*(RP^{m};F2)", F2, names, list(range(m + 1)), prods)
    elif preset == "nonorientable_F2":
        k = param
        if k < 1:
            raise BadParams("nonorientable surface needs k >= 1 crosscaps")
        names = ["1"] + [f"x{i}" for i in range(1, k + 1)] + ["y"]
        prods = {(f"x{i}", f"x{i}"): (1, "y") for i in range(1, k + 1)}
        t = ring_table(f"H*(N_{k};F2)", F2, names, [0] + [1] * k + [2], prods)
    return GradedAlgebra([t], name=t.name)


_PRESET_RE = re.compile(r"^\s*(\w+?)\s*[(:]\s*(\d+)\s*\)?\s*$")


def parse_preset(text: str) -> GradedAlgebra:
    """``"surface_F2(1)"``, ``"rp_F2:3"`` or ``"sphere_Z(2)"`` to a ring."""
    m = _PRESET_RE.match(text)
    if not m:
        raise BadParams(f"cannot parse ring preset {text!r}")
    name, param = m.group(1), int(m.group(2))
    if name in ("sphere_Z", "sphere_F2"):
        return build_ring("sphere", param, name[-2:] if name.endswith("F2") else Z)
    return build_ring(name, param)


def map_from_generators(domain: GradedAlgebra, codomain: GradedAlgebra,
                        images: Mapping[str, Element | str], name: str = "",
                        check: bool = True) -> AlgebraMap:
    """Extend generator images multiplicatively to a single-factor ring.

    Basis elements missing from ``images`` must factor as ``±e_i e_j`` with
    both factors of positive degree; unspecified generators map to zero.
    """
    if domain.nslots != 1:
        raise BadParams("map_from_generators expects a single-factor domain")
    t = domain.factors[0]
    imgs = {k: (codomain.parse(v) if isinstance(v, str) else v) for k, v in images.items()}
    cache: dict[int, Element] = {}

    def on_basis(k: int) -> Element:
        if k in cache:
            return cache[k]
        nm = t.names[k]
        if k == t.unit:
            out = codomain.one()
        elif nm in imgs:
            out = imgs[nm]
        else:
            out = None
            for i, j in itertools.product(range(t.dim), repeat=2):
                if (t.prod_idx[i, j] == k and abs(t.prod_coef[i, j]) == 1
                        and t.degrees[i] > 0 and t.degrees[j] > 0):
                    out = on_basis(i) * on_basis(j) * int(t.prod_coef[i, j])
                    break
            if out is None:
                out = codomain.zero()
        cache[k] = out
        return out

    return AlgebraMap(domain, codomain, on_basis, name=name, check=check)


def _surface_ring(g: int, coeffs: str) -> GradedAlgebra:
    return build_ring("surface_Z" if coeffs == Z else "surface_F2", g)


def action_map(space: str, action: str, coeffs: str, param: int,
               overrides: Mapping[str, str] | None = None) -> AlgebraMap:
    """Induced map ``g^*`` of the nontrivial element of Z2 on cohomology.

    ``space`` is ``"sphere"`` (``param`` = m) or ``"surface"`` (``param`` = g).
    On surfaces, indices pair as ``i <-> g+1-i``; ``overrides`` replaces the
    image of any listed generator (expressions in the same ring).
    """
    if space == "sphere":
        ring = build_ring("sphere", param, coeffs)
        if action == "antipodal":
            sign = (-1) ** (param + 1)
        elif action == "reflection":
            sign = -1
        else:
            raise UnsupportedPair(f"no action {action!r} on spheres")
        images: dict[str, Element | str] = {"w": ring.gen("w") * sign}
    elif space == "surface":
        g = param
        ring = _surface_ring(g, coeffs)
        images = {}
        if action == "reflection":
            for i in range(1, g + 1):
                images[f"a{i}"] = -ring.gen(f"a{i}")
                images[f"b{i}"] = ring.gen(f"b{i}")
        elif action == "rotation":
            if g % 2 == 0:
                raise UnsupportedPair("the rotation action is free only on odd genus")
            for i in range(1, g + 1):
                images[f"a{i}"] = ring.gen(f"a{g + 1 - i}")
                images[f"b{i}"] = ring.gen(f"b{g + 1 - i}")
        elif action == "antipodal":
            for i in range(1, g + 1):
                images[f"a{i}"] = -ring.gen(f"a{g + 1 - i}")
                images[f"b{i}"] = ring.gen(f"b{g + 1 - i}")
        else:
            raise UnsupportedPair(f"no action {action!r} on surfaces")
    else:
        raise UnsupportedPair(f"unknown space {space!r}")
    images.update(overrides or {})
    return map_from_generators(ring, ring, images, name=f"{action}*")


def quotient_pullback(space: str, action: str, param: int,
                      user_images: Mapping[str, str] | None = None,
                      quotient: GradedAlgebra | None = None) -> AlgebraMap:
    """``π^*: H^*(X/G;F2) -> H^*(X;F2)`` for the supported double covers.

    * sphere/antipodal: ``RP^m -> S^m``, every positive class maps to 0.
    * surface/antipodal, g = 1: ``N_2 -> Σ_1``, ``x_1, x_2 -> a1 + b1``.
    * surface/rotation, g = 1: ``Σ_1 -> Σ_1`` induced by squaring the circle
      factor dual to ``b1``: ``a1 -> a1``, ``b1 -> 0``.

    Any other pair needs ``user_images`` (generator -> expression) and the
    ``quotient`` ring.
    """
    if user_images is not None:
        if quotient is None:
            raise BadParams("user-supplied π^* needs the quotient ring")
        total = build_ring("sphere", param) if space == "sphere" else _surface_ring(param, F2)
        return map_from_generators(quotient, total, user_images, name="π*")
    if space == "sphere" and action == "antipodal":
        q, total = build_ring("rp_F2", param), build_ring("sphere", param)
        return map_from_generators(q, total, {"alpha": total.zero()}, name="π*")
    if space == "surface" and param == 1 and action == "antipodal":
        q, total = build_ring("nonorientable_F2", 2), build_ring("surface_F2", 1)
        return map_from_generators(q, total, {"x1": "a1 + b1", "x2": "a1 + b1"}, name="π*")
    if space == "surface" and param == 1 and action == "rotation":
        total = build_ring("surface_F2", 1)
        return map_from_generators(total, total, {"a1": "a1", "b1": total.zero()}, name="π*")
    raise UnsupportedPair(f"no built-in quotient map for {action} on {space}({param}); supply user_images")


def twisted_diagonals(ring: GradedAlgebra, gstar: AlgebraMap | None, n: int,
                      budget: int = DEFAULT_BUDGET) -> list[AlgebraMap]:
    """``Δ_n^* ∘ (1 ⊗ g_1^* ⊗ (g_1g_2)^* ⊗ ...)`` for every ``g⃗ ∈ Z2^{n-1}``.

    All returned maps share one domain object ``ring^{⊗n}``.
    """
    dom = tensor_power(ring, n, budget=budget)
    delta = diagonal_pullback(ring, n, domain=dom)
    if gstar is None:
        return [delta]
    ident = AlgebraMap(ring, ring, ring.basis, name="1", check=False)
    out = []
    for gvec in itertools.product((0, 1), repeat=n - 1):
        powers = [0] + list(itertools.accumulate(gvec, lambda a, b: (a + b) % 2))
        if not any(powers):
            out.append(delta)
            continue
        twist = tensor_maps([gstar if p else ident for p in powers], domain=dom, codomain=dom)
        out.append(delta.compose(twist))
    return out


def effective_kernel(ring: GradedAlgebra, gstar: AlgebraMap | None, n: int,
                     budget: int = DEFAULT_BUDGET) -> list[Element]:
    """Basis of the classes killed by every twisted diagonal (lattice basis over Z)."""
    return kernel_of_maps(twisted_diagonals(ring, gstar, n, budget=budget), budget=budget)


def effectual_pullback(total: GradedAlgebra, quot: GradedAlgebra, pi_star: AlgebraMap, n: int,
                       budget: int = DEFAULT_BUDGET, check: bool = True) -> AlgebraMap:
    """``Δ_n^* ∘ (1 ⊗ π^* ⊗ ... ⊗ π^*)`` on ``H^*(X × (X/G)^{n-1})``."""
    if pi_star.domain != quot or pi_star.codomain != total:
        raise ShapeMismatch("π^* must map the quotient ring to the total ring")
    dom = tensor_product([total] + [quot] * (n - 1), budget=budget)

    def on_basis(key: int) -> Element:
        digits = dom.decode(key)
        out = total.basis(digits[0])
        for d in digits[1:]:
            out = out * pi_star.image_of_basis(d)
        return out

    return AlgebraMap(dom, total, on_basis, name=f"ε{n}*", check=check)


def orbital_pullback(total: GradedAlgebra, quot: GradedAlgebra, pi_star: AlgebraMap, n: int,
                     budget: int = DEFAULT_BUDGET, check: bool = True) -> AlgebraMap:
    """``Δ_n^* ∘ (π^*)^{⊗n}`` on ``H^*((X/G)^n)``."""
    if pi_star.domain != quot or pi_star.codomain != total:
        raise ShapeMismatch("π^* must map the quotient ring to the total ring")
    dom = tensor_power(quot, n, budget=budget)

    def on_basis(key: int) -> Element:
        out = total.one()
        for d in dom.decode(key):
            out = out * pi_star.image_of_basis(d)
        return out

    return AlgebraMap(dom, total, on_basis, name=f"e{n}*", check=check)
