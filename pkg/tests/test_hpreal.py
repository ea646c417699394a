"""Interval arithmetic: enclosures must always contain the exact value."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdisc.errors import PrecisionError
from subdisc.hpreal import HPReal, decimal_str

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)


def test_exact_stays_exact():
    x = HPReal.exact(Fraction(5, 2))
    y = HPReal.exact(Fraction(1, 3))
    z = (x * y + x - y) / y
    assert z.is_exact
    assert z.mid == (Fraction(5, 6) + Fraction(5, 2) - Fraction(1, 3)) * 3


def test_endpoints_and_contains():
    x = HPReal.from_endpoints(Fraction(1, 4), Fraction(1, 2))
    assert x.lo() == Fraction(1, 4) and x.hi() == Fraction(1, 2)
    assert x.contains(Fraction(1, 3))
    assert not x.contains(1)
    assert not x.contains_zero()


@given(a=rationals, b=rationals, c=rationals)
@settings(max_examples=200, deadline=None)
def test_soundness_of_composed_expressions(a, b, c):
    # evaluate (a*b + c)^2 - a with fuzzed interval versions of the inputs
    pad = Fraction(1, 977)
    ia = HPReal(a, pad, prec=64)
    ib = HPReal(b, pad, prec=64)
    ic = HPReal(c, pad, prec=64)
    expr = (ia * ib + ic) ** 2 - ia
    exact = (a * b + c) ** 2 - a
    assert expr.contains(exact)


@given(a=rationals)
@settings(max_examples=100, deadline=None)
def test_reciprocal_soundness(a):
    if abs(a) < Fraction(1, 8):
        return
    ia = HPReal(a, Fraction(1, 100), prec=96)
    assert ia.reciprocal().contains(1 / a)


def test_reciprocal_through_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        HPReal.from_endpoints(-1, 1).reciprocal()


def test_pow_matches_repeated_multiplication():
    x = HPReal(Fraction(3, 7), Fraction(1, 1000), prec=64)
    direct = x * x * x * x * x
    assert (x ** 5).contains(Fraction(3, 7) ** 5)
    assert direct.contains(Fraction(3, 7) ** 5)
    assert (x ** 0).mid == 1


def test_sqrt_encloses():
    two = HPReal.exact(2, prec=128).sqrt()
    assert two.lo() ** 2 <= 2 <= two.hi() ** 2
    assert two.rad <= Fraction(1, 2 ** 120)
    with pytest.raises(ValueError):
        HPReal.exact(-1).sqrt()


def test_settle_keeps_enclosure():
    # force the rounding path with an awkward denominator and tiny radius
    x = HPReal(Fraction(10**80 + 1, 3 ** 200), Fraction(1, 2 ** 500), prec=64)
    y = x * x
    exact = Fraction(10**80 + 1, 3 ** 200) ** 2
    assert y.contains(exact)
    assert y.mid.denominator.bit_length() <= 64 + 65


def test_sign_and_comparisons():
    assert HPReal.from_endpoints(1, 2).sign() == 1
    assert HPReal.from_endpoints(-2, -1).sign() == -1
    assert HPReal.exact(0).sign() == 0
    with pytest.raises(PrecisionError):
        HPReal.from_endpoints(-1, 1).sign()
    assert HPReal.exact(2).certainly_lt(HPReal.exact(3))
    assert HPReal.exact(3).certainly_gt(Fraction(5, 2))


def test_decimal_rendering():
    assert decimal_str(Fraction(5, 2), 10) == "2.5"
    assert decimal_str(Fraction(1, 3), 6) == "0.333333"
    x = HPReal.exact(Fraction(17, 4))
    assert x.to_decimal(10) == "4.25"
    y = HPReal(Fraction(1, 4), Fraction(1, 10**40))
    assert "+/-" in y.to_decimal(10)
