"""Division chains and continued fractions."""
import random
from fractions import Fraction

import pytest

from euclid2.certificate import deserialize, serialize
from euclid2.chains import (
    ContinuedFraction,
    RegionLookup,
    ZeroTail,
    cfrac,
    clear_denominators,
    division_chain,
    eval_cf,
    two_stage_step,
    verify_chain,
    _round_to_zero,
)
from euclid2.covering import prove
from euclid2.field import QuadField

_lookups = {}


def lookup_for(m):
    if m not in _lookups:
        F = QuadField(m)
        _lookups[m] = RegionLookup(F, prove(F))
    return _lookups[m]


def test_round_to_zero():
    assert _round_to_zero(Fraction(1, 2)) == 0
    assert _round_to_zero(Fraction(-1, 2)) == 0
    assert _round_to_zero(Fraction(3, 2)) == 1
    assert _round_to_zero(Fraction(-3, 2)) == -1
    assert _round_to_zero(Fraction(7, 4)) == 2
    assert _round_to_zero(Fraction(-7, 4)) == -2
    assert _round_to_zero(Fraction(2)) == 2


def test_single_stage_shortcut():
    F = QuadField(2)
    step = two_stage_step(F.omega, F.element(2), lookup_for(2))
    assert len(step.stages) == 1
    q, r = step.stages[0]
    assert q == F.zero and r == F.omega


def test_exact_division_yields_zero_remainder():
    F = QuadField(2)
    alpha = F.element(3, 1) * F.element(1, 2)
    step = two_stage_step(alpha, F.element(1, 2), lookup_for(2))
    assert step.stages[-1][1].is_zero()


def test_chain_example_m2():
    F = QuadField(2)
    chain = division_chain(F.omega, F.element(2), lookup_for(2))
    cf = ContinuedFraction(tuple(chain.quotients))
    assert str(cf) == "[0,0; 0,1]"
    assert verify_chain(F.omega, F.element(2), chain)
    assert eval_cf(cf) == F.omega / F.element(2)


def test_cf_str_parse_roundtrip():
    F = QuadField(3)
    cf = ContinuedFraction((F.element(1, -2), F.element(0, 1), F.element(-3)))
    assert ContinuedFraction.parse(F, str(cf)) == cf
    with pytest.raises(ValueError):
        ContinuedFraction.parse(F, "1,2; 3,4")


def test_eval_cf_zero_tail():
    F = QuadField(2)
    with pytest.raises(ZeroTail) as ei:
        eval_cf(ContinuedFraction((F.element(1), F.element(0))))
    assert ei.value.index == 1
    with pytest.raises(ValueError):
        eval_cf(ContinuedFraction(()))


def test_clear_denominators():
    F = QuadField(5)
    a = F.element(Fraction(1, 2), Fraction(2, 3))
    b = F.element(Fraction(5, 6), 1)
    a2, b2 = clear_denominators(a, b)
    assert a2.is_integral() and b2.is_integral()
    assert a / b == a2 / b2


def test_division_chain_rejects_zero():
    F = QuadField(2)
    with pytest.raises(ZeroDivisionError):
        division_chain(F.one, F.zero, lookup_for(2))


def test_lookup_field_mismatch():
    F = QuadField(3)
    with pytest.raises(ValueError):
        RegionLookup(F, prove(QuadField(2)))


def test_lookup_from_certificate_roundtrip():
    cert = deserialize(serialize(prove(QuadField(2))))
    lk = RegionLookup.from_certificate(cert)
    assert lk.field.m == 2


@pytest.mark.parametrize("m", [2, 3, 5, 13, 14])
def test_random_chains_verify(m):
    F = QuadField(m)
    lk = lookup_for(m)
    rng = random.Random(m)
    for _ in range(100):
        a = F.element(rng.randint(-100, 100), rng.randint(-100, 100))
        b = F.element(rng.randint(-100, 100), rng.randint(-100, 100))
        if b.is_zero():
            continue
        chain = division_chain(a, b, lk)
        assert verify_chain(a, b, chain)
        cf = cfrac(a, b, lk)
        assert eval_cf(cf) == a / b


def test_verify_chain_rejects_tampering():
    F = QuadField(2)
    a, b = F.element(17, 5), F.element(3, 2)
    chain = division_chain(a, b, lookup_for(2))
    assert verify_chain(a, b, chain)
    # swapping the operands must fail
    assert not verify_chain(b, a, chain)
    # truncating the chain must fail
    from euclid2.chains import DivisionChain

    assert not verify_chain(a, b, DivisionChain(chain.steps[:-1]))
    assert not verify_chain(a, b, DivisionChain(()))
