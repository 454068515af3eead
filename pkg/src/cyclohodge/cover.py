"""Cyclic coverings of the projective line given by branch data.

A cover ``z^n = prod (y - s)^(m_s)`` is described by its order ``n`` and one
exponent ``m_s`` per branch point, the point at infinity included, so that
``sum(m_s) = 0 mod n``.  Coordinates of the branch points never enter any
formula; points are identified by label only.

For a character ``chi_j`` the holomorphic forms in the ``j``-eigenspace are
governed by the local exponents ``mu_s = frac(-j * m_s / n)``:

* ``dim V_j = -1 + sum(mu_s)``
* ``deg L_j = sum((j * m_s) mod n) / n``

so that ``dim V_j = deg L_(n-j) - 1`` whenever every local monodromy of
``chi_j`` is nontrivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DisconnectedCover,
    DuplicateLabel,
    FewerThanThreePoints,
    InvalidCharacter,
    NonIntegralGenus,
    SumNotZeroModN,
    TrivialLocalMonodromy,
)
from .exact import UnitArg

PointLike = Union[str, Fraction, None]


@dataclass(frozen=True)
class BranchPoint:
    label: str
    exponent: int
    point: PointLike = None


@dataclass(frozen=True)
class BranchData:
    """Order ``n`` of the cyclic group and the branch points with exponents."""

    order: int
    branch: tuple[BranchPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(self.branch))

    @classmethod
    def from_exponents(cls, n: int, exponents: Sequence[int], labels: Sequence[str] | None = None) -> BranchData:
        if labels is None:
            labels = [f"s{i}" for i in range(len(exponents))]
        if len(labels) != len(exponents):
            raise ValueError("labels and exponents differ in length")
        return cls(n, tuple(BranchPoint(str(lab), int(m)) for lab, m in zip(labels, exponents)))

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(p.exponent for p in self.branch)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.branch)

    def __len__(self) -> int:
        return len(self.branch)


def validate(b: BranchData) -> BranchData:
    """Normalize exponents into ``1..n-1`` (dropping multiples of ``n``) and check the data."""
    n = b.order
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"order must be a positive integer, got {n!r}")
    seen = set()
    for p in b.branch:
        if p.label in seen:
            raise DuplicateLabel(f"label {p.label!r} appears twice")
        seen.add(p.label)
    points = tuple(
        BranchPoint(p.label, p.exponent % n, p.point) for p in b.branch if p.exponent % n
    )
    if len(points) < 3:
        raise FewerThanThreePoints(f"need at least 3 branch points, got {len(points)}")
    total = sum(p.exponent for p in points)
    if total % n:
        raise SumNotZeroModN(f"exponents sum to {total}, not 0 mod {n}")
    if math.gcd(n, *(p.exponent for p in points)) != 1:
        raise DisconnectedCover(f"exponents share a factor with {n}; the cover is not connected")
    return BranchData(n, points)


def check_character(b: BranchData, j: int) -> int:
    if not isinstance(j, int) or not 1 <= j <= b.order - 1:
        raise InvalidCharacter(f"character index must lie in 1..{b.order - 1}, got {j!r}")
    return j


def cover_genus(b: BranchData) -> int:
    """Riemann-Hurwitz: ``2g - 2 = -2n + sum(n - gcd(n, m_s))``."""
    n = b.order
    ms = b.exponents
    if sum(ms) % n:
        raise SumNotZeroModN(f"exponents sum to {sum(ms)}, not 0 mod {n}")
    if math.gcd(n, *ms) != 1:
        raise DisconnectedCover(f"exponents share a factor with {n}; the cover is not connected")
    chi = -2 * n + sum(n - math.gcd(n, m) for m in ms)
    return chi // 2 + 1


def local_exponents(b: BranchData, j: int) -> tuple[UnitArg, ...]:
    """``frac(-j*m_s/n)`` for each branch point, in branch order."""
    return tuple(UnitArg(Fraction(-j * m, b.order)) for m in b.exponents)


def nontrivial_local_exponents(b: BranchData, j: int) -> tuple[UnitArg, ...]:
    check_character(b, j)
    mus = local_exponents(b, j)
    for p, mu in zip(b.branch, mus):
        if mu.is_trivial:
            raise TrivialLocalMonodromy(p.label, j)
    return mus


def eigenspace_h10(b: BranchData, j: int) -> int:
    """Dimension of the ``chi_j`` part of the holomorphic 1-forms."""
    mus = nontrivial_local_exponents(b, j)
    dim = -1 + sum(mu.value for mu in mus)
    assert dim.denominator == 1 and dim >= 0, dim
    return int(dim)


def eigensheaf_degree(b: BranchData, j: int) -> int:
    check_character(b, j)
    n = b.order
    total = sum((j * m) % n for m in b.exponents)
    if total % n:
        raise SumNotZeroModN(f"exponents of character {j} do not sum to 0 mod {n}")
    return total // n


@dataclass(frozen=True)
class EigenspaceRow:
    j: int
    h10: int
    h01: int
    eigensheaf_degree: int
    local_exponents: tuple[UnitArg, ...]

    @property
    def rank(self) -> int:
        return self.h10 + self.h01

    @property
    def unitary_flat(self) -> bool:
        return self.h10 == 0 or self.h01 == 0


@dataclass(frozen=True)
class EigenspaceTable:
    branch: BranchData
    rows: tuple[EigenspaceRow, ...]

    def row(self, j: int) -> EigenspaceRow:
        for r in self.rows:
            if r.j == j:
                return r
        raise KeyError(j)

    def __iter__(self):
        return iter(self.rows)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.h10 for r in self.rows)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.eigensheaf_degree for r in self.rows)


def eigenspace_table(b: BranchData) -> EigenspaceTable:
    n = b.order
    h10 = {j: eigenspace_h10(b, j) for j in range(1, n)}
    rows = tuple(
        EigenspaceRow(
            j=j,
            h10=h10[j],
            h01=h10[n - j],
            eigensheaf_degree=eigensheaf_degree(b, j),
            local_exponents=local_exponents(b, j),
        )
        for j in range(1, n)
    )
    return EigenspaceTable(b, rows)


def hurwitz_base_genus(n: int, g_base: int, ram: Iterable[int]) -> int:
    """Genus of a degree-``n`` Galois cover of a genus-``g_base`` curve.

    ``ram`` lists the ramification order over each branch point;
    ``2g - 2 = n * (2*g_base - 2 + sum(1 - 1/e))``.
    """
    ram = list(ram)
    for e in ram:
        if e < 2 or n % e:
            raise NonIntegralGenus(f"ramification order {e} must be >= 2 and divide {n}")
    two_g_minus_two = n * (2 * g_base - 2 + sum(1 - Fraction(1, e) for e in ram))
    if two_g_minus_two.denominator != 1 or two_g_minus_two % 2 or two_g_minus_two < -2:
        raise NonIntegralGenus(f"2g - 2 = {two_g_minus_two} does not come from a genus")
    return int(two_g_minus_two) // 2 + 1
