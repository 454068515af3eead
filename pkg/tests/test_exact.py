from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclohodge.exact import UnitArg, as_rational, format_rational, frac

rationals = st.fractions(max_denominator=60).filter(lambda x: abs(x) < 1000)


@pytest.mark.parametrize(
    "x, expected",
    [(Fraction(-1, 7), Fraction(6, 7)), (Fraction(9, 7), Fraction(2, 7)), (Fraction(0), Fraction(0))],
)
def test_frac_examples(x, expected):
    assert frac(x).value == expected


@given(rationals, rationals)
def test_frac_is_additive_mod_one(x, y):
    assert frac(x + y) == frac(frac(x).value + frac(y).value)
    assert frac(x + y) == frac(x) + frac(y)


@given(rationals)
def test_frac_range(x):
    v = frac(x).value
    assert 0 <= v < 1
    assert (x - v).denominator == 1


def test_unitarg_order_and_triviality():
    assert UnitArg(Fraction(3, 7)).order == 7
    assert UnitArg(Fraction(5)).is_trivial
    assert (UnitArg(Fraction(1, 2)) * 2).is_trivial
    assert -UnitArg(Fraction(1, 3)) == UnitArg(Fraction(2, 3))


def test_as_rational_accepts_strings_and_ints():
    assert as_rational("8/7") == Fraction(8, 7)
    assert as_rational("-3") == Fraction(-3)
    assert as_rational(4) == Fraction(4)


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "abc", None])
def test_as_rational_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        as_rational(bad)


def test_format_rational_is_lowest_terms():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(0)) == "0/1"
    assert format_rational(Fraction(-2, 7)) == "-2/7"
