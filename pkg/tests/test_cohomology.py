import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equitc import backend
from equitc.cohomology.algebra import F2, Z, Element, diagonal_pullback, tensor_power
from equitc.cohomology.linalg import gf2_nullspace, gf2_rank, in_span, integer_kernel, kernel_of_maps
from equitc.cohomology.rings import (
    action_map, build_ring, effectual_pullback, orbital_pullback, parse_preset, quotient_pullback,
    twisted_diagonals,
)
from equitc.errors import BadParams, ParseError, UnsupportedPair


def test_presets_have_expected_dimensions():
    assert build_ring("sphere", 3).dim == 2
    assert build_ring("surface_Z", 2).dim == 6
    assert build_ring("rp_F2", 4).dim == 5
    assert build_ring("nonorientable_F2", 2).dim == 4
    assert build_ring("sphere", 2) is build_ring("sphere", 2)


def test_unknown_preset_and_bad_coefficients():
    with pytest.raises(BadParams):
        build_ring("klein", 1)
    with pytest.raises(BadParams):
        build_ring("surface_F2", 1, Z)
    with pytest.raises(BadParams):
        parse_preset("surface(")


def test_parse_preset_forms():
    assert parse_preset("surface_F2(1)") is build_ring("surface_F2", 1)
    assert parse_preset("rp_F2:3") is build_ring("rp_F2", 3)
    assert parse_preset("sphere_Z(2)").coeffs == Z


def test_surface_relations():
    r = build_ring("surface_Z", 2)
    a1, b1, a2, b2, c = (r.gen(n) for n in ("a1", "b1", "a2", "b2", "c"))
    assert a1 * b1 == c
    assert b1 * a1 == -c
    assert (a1 * b2).is_zero()
    assert (a1 * a1).is_zero()


def test_rp_truncation():
    r = build_ring("rp_F2", 3)
    a = r.gen("alpha")
    assert a * a * a == r.gen("alpha^3")
    assert (a * a * a * a).is_zero()


def test_koszul_sign_on_degree_one_pairs():
    r = build_ring("surface_Z", 1)
    t = tensor_power(r, 2)
    for u, v in itertools.product(("a1", "b1"), repeat=2):
        x, y = t.gen(u, 1), t.gen(v, 2)
        assert (x * y + y * x).is_zero()


def test_parse_double_index_notation():
    t = tensor_power(build_ring("surface_F2", 2), 3)
    x = t.parse("a_{1,2} + b_{2,3}")
    assert x == t.gen("a1", 2) + t.gen("b2", 3)
    assert t.parse("(a_{1,1} + a_{1,2})^2") == (t.gen("a1", 1) + t.gen("a1", 2)) * (t.gen("a1", 1) + t.gen("a1", 2))
    with pytest.raises((ParseError, BadParams)):
        t.parse("a_{1,4}")


def test_diagonal_multiplies_slots():
    r = build_ring("surface_Z", 1)
    d = diagonal_pullback(r, 2)
    t = d.domain
    assert d(t.gen("a1", 1) * t.gen("b1", 2)) == r.gen("c")
    assert d(t.gen("b1", 1) * t.gen("a1", 2)) == -r.gen("c")


def test_action_maps_are_involutions():
    for space, action, param, coeffs in [("sphere", "antipodal", 2, Z), ("sphere", "reflection", 3, Z),
                                         ("surface", "rotation", 3, Z), ("surface", "antipodal", 2, Z),
                                         ("surface", "reflection", 2, F2)]:
        g = action_map(space, action, coeffs, param)
        assert g.compose(g).is_identity()


def test_antipodal_degree_sign():
    r = build_ring("sphere", 2, Z)
    assert action_map("sphere", "antipodal", Z, 2)(r.gen("w")) == -r.gen("w")
    r3 = build_ring("sphere", 3, Z)
    assert action_map("sphere", "antipodal", Z, 3)(r3.gen("w")) == r3.gen("w")


def test_rotation_needs_odd_genus():
    with pytest.raises(UnsupportedPair):
        action_map("surface", "rotation", Z, 2)


def test_effectual_kills_torus_class():
    pi = quotient_pullback("surface", "antipodal", 1)
    f = effectual_pullback(pi.codomain, pi.domain, pi, 2)
    assert f(f.domain.parse("a_{1,1} + b_{1,1} + x_{1,2}")).is_zero()


def test_orbital_on_sphere_kills_positive_degrees():
    pi = quotient_pullback("sphere", "antipodal", 2)
    f = orbital_pullback(pi.codomain, pi.domain, pi, 2)
    assert f(f.domain.parse("alpha_{1}")).is_zero()
    assert not f(f.domain.one()).is_zero()


def test_twisted_diagonal_count():
    r = build_ring("sphere", 2)
    g = action_map("sphere", "antipodal", F2, 2)
    assert len(twisted_diagonals(r, g, 3)) == 4
    assert len(twisted_diagonals(r, None, 3)) == 1


def test_integer_kernel_is_exact():
    a = [[2, 4, 6], [1, 1, 1]]
    ker = integer_kernel(a)
    assert len(ker) == 1
    assert np.all(np.asarray(a) @ np.asarray(ker[0]) == 0)
    assert np.gcd.reduce(np.abs(ker[0])) == 1


def test_gf2_nullspace_and_rank():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    ns = gf2_nullspace(a)
    assert ns.shape[0] == 1
    assert not np.any((a @ ns.T) % 2)
    assert gf2_rank(a) == 2


def test_kernel_of_diagonal_contains_zero_divisors():
    r = build_ring("surface_F2", 1)
    d = diagonal_pullback(r, 2)
    ker = kernel_of_maps([d])
    t = d.domain
    assert in_span(ker, t.parse("a_{1,1} + a_{1,2}"))
    assert not in_span(ker, t.parse("a_{1,1}"))


def test_backend_parity_on_products():
    rng = np.random.default_rng(1)
    t = tensor_power(build_ring("surface_Z", 2), 3)
    xs = [Element(t, {int(k): int(rng.integers(-3, 4)) for k in rng.choice(t.dim, 40, replace=False)})
          for _ in range(4)]
    results = {}
    for name in backend.BACKENDS:
        backend.use(name)
        results[name] = [x * y for x in xs for y in xs]
    backend.use("compiled" if "compiled" in backend.BACKENDS else "python")
    vals = list(results.values())
    for other in vals[1:]:
        assert other == vals[0]


def test_backend_parity_on_rref():
    rng = np.random.default_rng(2)
    m = rng.integers(0, 2, size=(40, 55), dtype=np.uint8)
    outs = [backend.BACKENDS[k].gf2_rref(m) for k in backend.BACKENDS]
    for r, piv in outs[1:]:
        assert np.array_equal(r, outs[0][0]) and list(piv) == list(outs[0][1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_sign_rule_graded_commutativity(keys, coefs):
    t = tensor_power(build_ring("surface_Z", 1), 2)
    gens = [t.gen(n, s) for s in (1, 2) for n in ("a1", "b1", "c")]
    x = Element(t, {}) + gens[keys[0]] * coefs[0] + gens[keys[1]] * coefs[1]
    y = gens[keys[2]] * coefs[2]
    dx = {t.degree_of(k) for k in x.terms} if x.terms else {0}
    if len(dx) == 1 and y.terms:
        sign = (-1) ** (dx.pop() * t.degree_of(next(iter(y.terms))))
        assert x * y == (y * x) * sign


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10))
def test_diagonal_is_multiplicative(m, seed):
    r = build_ring("rp_F2", m)
    d = diagonal_pullback(r, 2)
    rng = np.random.default_rng(seed)
    t = d.domain
    x = Element(t, {int(k): 1 for k in rng.choice(t.dim, 3, replace=False)})
    y = Element(t, {int(k): 1 for k in rng.choice(t.dim, 3, replace=False)})
    assert d(x * y) == d(x) * d(y)
