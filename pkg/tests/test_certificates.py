import pytest

from equitc.cohomology.algebra import F2
from equitc.cohomology.certificates import (
    BUILTIN, NONZERO, Certificate, certificate_kernel, kernel_cuplength_by_enumeration,
    max_cuplength_bruteforce, oracle_cases, sphere_effective, sphere_effectual, sphere_orbital,
    surface_reflection_effective, surface_rotation_effective, torus_antipodal_effectual,
    torus_rotation_orbital, verify_certificate,
)
from equitc.cohomology.linalg import kernel_of_maps
from equitc.cohomology.rings import action_map, build_ring, diagonal_pullback, twisted_diagonals
from equitc.errors import BadParams, BudgetExceeded


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_sphere_effective_bound_is_n(m, n):
    rep = verify_certificate(sphere_effective(m, n))
    assert rep.passed and rep.bound == n


def test_sphere_reflection_certificate():
    rep = verify_certificate(sphere_effective(2, 3, action="reflection"))
    assert rep.passed and rep.bound == 3


def test_rotation_product_is_exactly_two_to_the_n():
    rep = verify_certificate(surface_rotation_effective(1, 2))
    assert rep.passed
    assert rep.product == rep.expected
    assert rep.product.startswith("4")
    assert rep.bound == 5


def test_torus_effectual_product():
    rep = verify_certificate(torus_antipodal_effectual(2))
    assert rep.passed and rep.bound == 4
    assert "y" in rep.product


def test_sphere_orbital_and_effectual_bounds():
    assert verify_certificate(sphere_orbital(3, 2)).bound == 7
    assert verify_certificate(sphere_effectual(2, 3)).bound == 5


def test_reflection_surface_bound():
    rep = verify_certificate(surface_reflection_effective(2, 2))
    assert rep.passed and rep.bound == 4
    with pytest.raises(BadParams):
        surface_reflection_effective(1, 2)


def test_torus_rotation_orbital_bound():
    assert verify_certificate(torus_rotation_orbital(2)).bound == 4


def test_wrong_factor_is_named():
    good = sphere_effective(2, 2)
    dom = good.domain
    bad = Certificate("bad", good.targets, (dom.parse("w_{1}"),), labels=("w_{1}",))
    rep = verify_certificate(bad)
    assert not rep.passed
    assert rep.offending == ["w_{1}"]
    assert rep.bound == 1


def test_zero_product_fails():
    good = sphere_effective(2, 2)
    x = good.factors[0]
    rep = verify_certificate(Certificate("square", good.targets, (x, x, x)))
    assert all(rep.factors_in_kernel)
    assert not rep.product_nonzero and not rep.passed


def test_report_dict_shape():
    d = verify_certificate(sphere_effective(1, 2)).to_dict()
    assert {"factors_in_kernel", "product", "bound"} <= d.keys()
    assert d["expected"] == NONZERO


def test_builtin_registry_is_complete():
    assert set(BUILTIN) == {
        "sphere-effective", "sphere-effectual", "sphere-orbital", "surface-usual-effective",
        "surface-reflection-effective", "surface-rotation-effective", "torus-antipodal-effectual",
        "torus-rotation-orbital",
    }


def test_oracle_small_cases_match_certificates():
    for case in oracle_cases():
        basis = kernel_of_maps(list(case.targets))
        assert max_cuplength_bruteforce(basis) == case.certificate_length, case.name


def test_oracle_agrees_with_enumeration():
    for case in oracle_cases()[:3]:
        basis = kernel_of_maps(list(case.targets))
        assert kernel_cuplength_by_enumeration(basis, 4) == max_cuplength_bruteforce(basis)


def test_oracle_on_circle_diagonal():
    r = build_ring("sphere", 1)
    assert max_cuplength_bruteforce(kernel_of_maps([diagonal_pullback(r, 2)])) == 1


def test_oracle_is_at_least_certificate_length():
    cert = torus_rotation_orbital(2)
    assert max_cuplength_bruteforce(certificate_kernel(cert), extra=cert.factors) >= len(cert.factors)


def test_oracle_budget_and_coefficients():
    cert = surface_rotation_effective(1, 2)
    with pytest.raises(BadParams):
        max_cuplength_bruteforce(certificate_kernel(cert))
    r = build_ring("surface_F2", 2)
    basis = kernel_of_maps(twisted_diagonals(r, action_map("surface", "reflection", F2, 2), 3))
    with pytest.raises(BudgetExceeded):
        max_cuplength_bruteforce(basis, max_dim=10)
