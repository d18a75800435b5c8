import numpy as np
import pytest

from equitc.errors import BadParams
from equitc.planners import DomainIndex, plan_sphere_antipodal_effective
from equitc.spaces import Multipath, PathFn
from equitc.verifier import (
    ADAPTERS, PlannerAdapter, PlanOutput, Stratum, check_partition, check_section, continuity_sweep,
    detect_instability, domain_count, farber_instability, fixed_planner_stability, make_adapter,
    partition_for, random_inputs, run_checks,
)


@pytest.mark.parametrize("planner", sorted(ADAPTERS))
def test_section_small(planner):
    ad = make_adapter(planner)
    rep = check_section(ad, random_inputs(ad, 100, seed=3))
    assert rep.passed and rep.max_endpoint < 1e-9


@pytest.mark.parametrize("planner", sorted(ADAPTERS))
def test_partition_small(planner):
    rep = partition_for(make_adapter(planner), 300, seed=5)
    assert rep.passed
    assert rep.witnesses_realized == rep.expected


@pytest.mark.parametrize("planner,count", [("sphere-antipodal", 3), ("sphere-reflection", 3),
                                           ("sphere-standard", 3), ("torus-effectual", 6), ("euclid", 4)])
def test_domain_counts_at_n3(planner, count):
    assert domain_count(make_adapter(planner, n=3)) == count


@pytest.mark.parametrize("planner", sorted(ADAPTERS))
def test_continuity_small(planner):
    ad = make_adapter(planner, n=2)
    for i in ad.domain_indices():
        rep = continuity_sweep(ad, i, bases=15, seed=i)
        assert rep.passed, rep


def test_partition_reports_double_hits():
    preds = {0: lambda x: x >= 0, 1: lambda x: x <= 0}
    rep = check_partition(preds, lambda rng: 0.0, 5)
    assert len(rep.doubles) == 5 and not rep.passed


def test_partition_reports_misses():
    preds = {0: lambda x: x > 1}
    rep = check_partition(preds, lambda rng: 0.0, 3)
    assert rep.misses == [0, 1, 2]


def test_section_catches_wrong_target():
    ad = make_adapter("sphere-antipodal", n=2)
    inputs = random_inputs(ad, 5, seed=0)

    class Shifted(type(ad)):
        def endpoint_targets(self, inp):
            return [[-np.asarray(p)] for p in inp]

    bad = Shifted(ad.m, ad.n)
    assert not check_section(bad, inputs).passed


class _Wiggle(PlannerAdapter):
    """A planner that is continuous but far too steep to pass the sweep."""

    id = "wiggle"
    family = "F"

    def plan(self, inp):
        a = 1e5 * float(inp[0])
        return PlanOutput(DomainIndex("F", 0), Multipath((PathFn.constant(np.array([np.cos(a), np.sin(a)])),)))

    def stratum(self, index, rng):
        return Stratum("line", np.array([rng.uniform()]), lambda p: p)


def test_continuity_negative_control():
    rep = continuity_sweep(_Wiggle(2), 0, bases=20)
    assert not rep.passed


def test_continuity_rejects_bad_deltas():
    with pytest.raises(BadParams):
        continuity_sweep(make_adapter("euclid", n=2), 0, bases=1, deltas=(1e-4, 1e-2))


def test_farber_is_unstable():
    rep = farber_instability(20)
    assert rep.unstable and rep.tail_min > 1e-2


def test_fixed_planner_is_stable():
    reps = fixed_planner_stability(20)
    assert reps and all(not r.unstable for r in reps.values())


def test_stable_sequence_is_stable():
    e1, e2 = np.eye(3)[:2]
    seq = [[e1, np.cos(t) * e2 + np.sin(t) * np.eye(3)[2]] for t in 2.0 ** -np.arange(1, 20)]
    rep = detect_instability(lambda x: plan_sphere_antipodal_effective(x)[1], seq, [e1, e2])
    assert not rep.unstable


def test_run_checks_bundle():
    rep = run_checks("euclid", ["section", "partition"], samples=50, n=2)
    assert rep["passed"] and set(rep["checks"]) == {"section", "partition"}
    assert not run_checks("farber", ["instability"])["passed"]
    with pytest.raises(BadParams):
        run_checks("farber", ["section"])
    with pytest.raises(BadParams):
        make_adapter("klein")
