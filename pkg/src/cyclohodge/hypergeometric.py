"""Gauss hypergeometric data attached to a character of a 4-point cover.

With the moving point placed third, ``(0, 1, x, oo)``, and local exponents
``mu_s = frac(-j*m_s/n)``, the period integral

    int_1^oo y^(-mu_0) (y-1)^(-mu_1) (x-y)^(-mu_x) dy

becomes an Euler integral after ``y = 1/t``, which pins

    alpha, beta = {mu_x, mu_0 + mu_1 + mu_x - 1},   gamma = mu_0 + mu_x

with ``alpha >= beta``.  ``gamma`` then lies in ``(0, 2)`` automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cover import BranchData, nontrivial_local_exponents
from .errors import NotFourPoints
from .exact import RationalLike, as_rational, format_rational

_ZERO_NAMES = ("0",)
_ONE_NAMES = ("1",)
_X_NAMES = ("x", "X", "t")
_INF_NAMES = ("inf", "oo", "∞", "infinity", "Infinity")


@dataclass(frozen=True)
class HypergeometricParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> HypergeometricParams:
        return cls(as_rational(alpha), as_rational(beta), as_rational(gamma))

    @property
    def common_denominator(self) -> int:
        return math.lcm(self.alpha.denominator, self.beta.denominator, self.gamma.denominator)

    def scaled(self, k: int) -> HypergeometricParams:
        return HypergeometricParams(k * self.alpha, k * self.beta, k * self.gamma)

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("alpha", "beta", "gamma")}

    def __str__(self):
        return f"({self.alpha}, {self.beta}, {self.gamma})"


@dataclass(frozen=True)
class RiemannScheme:
    at0: tuple[Fraction, Fraction]
    at1: tuple[Fraction, Fraction]
    at_inf: tuple[Fraction, Fraction]

    def exponent_sum(self) -> Fraction:
        return sum(self.at0) + sum(self.at1) + sum(self.at_inf)

    def to_json(self) -> dict:
        return {
            "at0": [format_rational(x) for x in self.at0],
            "at1": [format_rational(x) for x in self.at1],
            "atInf": [format_rational(x) for x in self.at_inf],
        }


@dataclass(frozen=True)
class ExponentDifferences:
    lam: Fraction
    mu: Fraction
    nu: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.lam, self.mu, self.nu)


@dataclass(frozen=True)
class LocalOrders:
    """Projective orders of the local monodromies at 0, 1 and infinity.

    An integral exponent difference gives order 1, but the local monodromy
    may then be a nontrivial unipotent; ``possibly_unipotent`` marks those.
    """

    at0: int
    at1: int
    at_inf: int
    possibly_unipotent: tuple[bool, bool, bool]

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.at0, self.at1, self.at_inf)


def _find(b: BranchData, names: Sequence[str], point_value) -> int | None:
    for i, p in enumerate(b.branch):
        if p.label in names:
            return i
    for i, p in enumerate(b.branch):
        if p.point is not None and (p.point == point_value or str(p.point) in names):
            return i
    return None


def resolve_ordering(b: BranchData, order: Sequence[str] | None = None) -> tuple[int, int, int, int]:
    """Indices of the branch points playing the roles (0, 1, x, oo).

    An explicit ``order`` of four labels wins; otherwise the labels (or point
    values) ``0``, ``1``, ``x``, ``inf`` are looked up, and failing that the
    branch order is taken as given.
    """
    if len(b.branch) != 4:
        raise NotFourPoints(f"hypergeometric data needs exactly 4 branch points, got {len(b.branch)}")
    labels = b.labels
    if order is not None:
        if sorted(order) != sorted(labels):
            raise ValueError(f"ordering {list(order)} is not a permutation of {list(labels)}")
        return tuple(labels.index(lab) for lab in order)
    found = (
        _find(b, _ZERO_NAMES, Fraction(0)),
        _find(b, _ONE_NAMES, Fraction(1)),
        _find(b, _X_NAMES, "x"),
        _find(b, _INF_NAMES, "∞"),
    )
    if None not in found and len(set(found)) == 4:
        return found
    return (0, 1, 2, 3)


def character_to_hg(b: BranchData, j: int, order: Sequence[str] | None = None) -> HypergeometricParams:
    """Hypergeometric parameters of the ``chi_j`` period system of a 4-point family."""
    idx = resolve_ordering(b, order)
    mus = nontrivial_local_exponents(b, j)
    mu0, mu1, mux, _ = (mus[i].value for i in idx)
    a, c = mux, mu0 + mu1 + mux - 1
    alpha, beta = max(a, c), min(a, c)
    return HypergeometricParams(alpha, beta, mu0 + mux)


def riemann_scheme(p: HypergeometricParams) -> RiemannScheme:
    return RiemannScheme(
        at0=(Fraction(0), 1 - p.gamma),
        at1=(Fraction(0), p.gamma - p.alpha - p.beta),
        at_inf=(p.alpha, p.beta),
    )


def exponent_differences(p: HypergeometricParams) -> ExponentDifferences:
    return ExponentDifferences(abs(1 - p.gamma), abs(p.gamma - p.alpha - p.beta), abs(p.alpha - p.beta))


def local_orders(p: HypergeometricParams) -> LocalOrders:
    diffs = exponent_differences(p).as_tuple()
    orders = tuple(d.denominator for d in diffs)
    return LocalOrders(*orders, possibly_unipotent=tuple(d.denominator == 1 for d in diffs))


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def is_irreducible(p: HypergeometricParams) -> bool:
    """None of alpha, beta, gamma - alpha, gamma - beta is an integer."""
    return not any(_is_int(x) for x in (p.alpha, p.beta, p.gamma - p.alpha, p.gamma - p.beta))


def pairwise_nonresonant(p: HypergeometricParams) -> bool:
    """The weaker test "no difference of two of alpha, beta, gamma is an integer"."""
    a, b, c = p.alpha, p.beta, p.gamma
    return not any(_is_int(x) for x in (a - b, a - c, b - c))


def resonance_tests_disagree(p: HypergeometricParams) -> bool:
    return is_irreducible(p) != pairwise_nonresonant(p)
