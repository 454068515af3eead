"""Rationals and arguments of roots of unity.

Rationals are plain :class:`fractions.Fraction` values.  A root of unity
``exp(2*pi*i*t)`` is carried by its argument ``t`` reduced modulo 1
(:class:`UnitArg`); multiplying roots of unity is then adding arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def lcm_of_denominators(*xs: Fraction) -> int:
    n = 1
    for x in xs:
        n = math.lcm(n, Fraction(x).denominator)
    return n


@dataclass(frozen=True, order=True)
class UnitArg:
    """Argument of a root of unity, kept in ``[0, 1)``."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    def __add__(self, other: UnitArg) -> UnitArg:
        if not isinstance(other, UnitArg):
            return NotImplemented
        return UnitArg(self.value + other.value)

    def __neg__(self) -> UnitArg:
        return UnitArg(-self.value)

    def __sub__(self, other: UnitArg) -> UnitArg:
        if not isinstance(other, UnitArg):
            return NotImplemented
        return UnitArg(self.value - other.value)

    def __mul__(self, k: int) -> UnitArg:
        if not isinstance(k, int):
            return NotImplemented
        return UnitArg(self.value * k)

    __rmul__ = __mul__

    @property
    def order(self) -> int:
        """Multiplicative order of the root of unity."""
        return self.value.denominator

    @property
    def is_trivial(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return format_rational(self.value)


def frac(x: RationalLike) -> UnitArg:
    """``x - floor(x)`` as a :class:`UnitArg`."""
    return UnitArg(as_rational(x))
