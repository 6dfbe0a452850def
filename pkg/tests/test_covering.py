"""Center classes, translate pools and the covering search."""
import pytest

from euclid2.covering import (
    ClassNumberNotOne,
    Inconclusive,
    ScheduleParams,
    compute_QN,
    expand_translates,
    prove,
    schedule_step,
)
from euclid2.certificate import verify_certificate
from euclid2.field import QuadField
from euclid2.geometry import fundamental_box
from oracles import brute_center_classes


def test_schedule_step_defaults():
    p = ScheduleParams()
    assert schedule_step(p, 0) == (5, 40)
    assert schedule_step(p, 1) == (5, 80)
    assert schedule_step(p, 2) == (6, 120)
    frozen = ScheduleParams(n0=1, cn=0)
    assert schedule_step(frozen, 10) == (10, 1)


def test_compute_QN_m2_small():
    F = QuadField(2)
    got = {(c.a, c.b, c.n) for c in compute_QN(F, 2)}
    from fractions import Fraction

    assert got == {
        (Fraction(0), Fraction(0), 1),
        (Fraction(0), Fraction(1, 2), 2),
    }


@pytest.mark.parametrize("m", [2, 3, 5, 13])
@pytest.mark.parametrize("N", range(1, 21))
def test_compute_QN_matches_brute_force(m, N):
    got = {(c.a, c.b, c.n) for c in compute_QN(QuadField(m), N)}
    assert got == brute_center_classes(m, N)


def test_compute_QN_sorted_and_witnessed():
    F = QuadField(3)
    classes = compute_QN(F, 30)
    keys = [(c.n, c.a, c.b) for c in classes]
    assert keys == sorted(keys)
    for c in classes:
        assert abs(c.q2.norm()) == c.n
        inv = c.q2.inverse()
        assert (inv - F.element(c.a, c.b)).is_integral()


def test_expand_translates_ordering_and_wellformed():
    F = QuadField(2)
    R0 = fundamental_box(F)
    classes = compute_QN(F, 6)
    regions = expand_translates(F, classes, 3, 6, R0)
    assert regions
    ns = [r.n for r in regions]
    assert ns == sorted(ns)
    keys = {r.key() for r in regions}
    assert len(keys) == len(regions)
    for r in regions[:50]:
        assert r.q1_base.is_integral()


def test_prove_m5_small_cover():
    cert = prove(QuadField(5))
    assert verify_certificate(cert).accepted
    assert cert.m == 5 and cert.disc == 5
    # the golden ratio field covers with unit denominators only
    F = QuadField(5)
    assert all(abs(F.element(qa, qb).norm()) == 1 for _, _, qa, qb in cert.regions)


def test_prove_class_number_guard():
    with pytest.raises(ClassNumberNotOne):
        prove(QuadField(10))


def test_prove_depth_cap_inconclusive():
    with pytest.raises(Inconclusive) as ei:
        prove(QuadField(14), ScheduleParams(max_depth=2))
    assert set(ei.value.path) <= set("0123")


def test_prove_deterministic():
    from euclid2.certificate import serialize

    a = serialize(prove(QuadField(2)))
    b = serialize(prove(QuadField(2)))
    assert a == b
