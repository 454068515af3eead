"""Finiteness of hypergeometric monodromy, decided two independent ways.

``schwarz_lookup`` matches the exponent differences against the classical
table of finite projective monodromy groups (shipped as
``data/schwarz_table.txt``).  ``interlacing_finiteness`` instead checks, for
every Galois conjugate, whether the eigenvalue arguments of the local
monodromy at infinity and of the inverse local monodromy at zero interlace
on the circle.

Equivalence of exponent-difference triples: permutations, and
``(l, m, n) -> (+-l + a, +-m + b, +-n + c)`` with ``a + b + c`` even.  Each
entry folds to ``r = dist(x, Z) in [0, 1/2]`` plus a shift parity; the class
is the sorted ``r`` together with the total parity, which is irrelevant once
some ``r`` equals 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .errors import ResonantInput
from .exact import RationalLike, as_rational, format_rational
from .hypergeometric import HypergeometricParams, exponent_differences, is_irreducible, local_orders

HALF = Fraction(1, 2)
TABLE_VERSION = "schwarz-table v1"


class SchwarzType(str, enum.Enum):
    DIHEDRAL = "Dihedral"
    TETRAHEDRAL = "Tetrahedral"
    OCTAHEDRAL = "Octahedral"
    ICOSAHEDRAL = "Icosahedral"
    INFINITE = "Infinite"
    REDUCIBLE = "ReducibleNotApplicable"


@dataclass(frozen=True)
class SchwarzTriple:
    lam: Fraction
    mu: Fraction
    nu: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.lam, self.mu, self.nu)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.as_tuple()) + ")"


@dataclass(frozen=True)
class FinitenessVerdict:
    finite: bool
    schwarz_type: SchwarzType
    witness: str
    row: int | None = None
    k: int | None = None

    def to_json(self) -> dict:
        out = {"finite": self.finite, "type": self.schwarz_type.value, "witness": self.witness}
        if self.row is not None:
            out["row"] = self.row
        if self.k is not None:
            out["k"] = self.k
        return out


@dataclass(frozen=True)
class TableRow:
    number: int
    triple: tuple[Fraction, Fraction, Fraction] | None  # None for the dihedral family
    group: SchwarzType


def _fold(x: Fraction) -> tuple[Fraction, int]:
    f = math.floor(x)
    t = x - f
    if t <= HALF:
        return t, f % 2
    return 1 - t, (f + 1) % 2


def normalize_triple(lam: RationalLike, mu: RationalLike, nu: RationalLike) -> SchwarzTriple:
    """Canonical representative ``0 <= l <= m <= n < 1`` of the equivalence class.

    The single exception is the class of ``(0, 0, 1)``, which has no
    representative below 1; it is returned as is (every member is reducible).
    """
    folded = [_fold(as_rational(x)) for x in (lam, mu, nu)]
    rs = sorted(r for r, _ in folded)
    parity = sum(p for _, p in folded) % 2
    if parity == 0 or HALF in rs:
        return SchwarzTriple(*rs)
    options = []
    for i, r in enumerate(rs):
        if r:
            flipped = list(rs)
            flipped[i] = 1 - r
            options.append(tuple(sorted(flipped)))
    if not options:
        return SchwarzTriple(Fraction(0), Fraction(0), Fraction(1))
    return SchwarzTriple(*min(options))


def triple_is_reducible(lam: Fraction, mu: Fraction, nu: Fraction) -> bool:
    """Some ``+-lam +-mu +-nu`` is an odd integer."""
    for s in (lam + mu + nu, -lam + mu + nu, lam - mu + nu, lam + mu - nu):
        if s.denominator == 1 and s.numerator % 2:
            return True
    return False


_TYPE_NAMES = {
    "dihedral": SchwarzType.DIHEDRAL,
    "tetrahedral": SchwarzType.TETRAHEDRAL,
    "octahedral": SchwarzType.OCTAHEDRAL,
    "icosahedral": SchwarzType.ICOSAHEDRAL,
}


def parse_table(lines: Iterable[str]) -> tuple[TableRow, ...]:
    rows = []
    version = None
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if version is None:
                version = line.lstrip("#").strip()
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ValueError(f"malformed table row: {raw!r}")
        *vals, kind = fields
        group = _TYPE_NAMES[kind.lower()]
        if "nu" in vals:
            triple = None
        else:
            triple = tuple(Fraction(v) for v in vals)
        rows.append(TableRow(len(rows) + 1, triple, group))
    if version != TABLE_VERSION:
        raise ValueError(f"unsupported table version {version!r}")
    return tuple(rows)


@lru_cache(maxsize=1)
def schwarz_table() -> tuple[TableRow, ...]:
    text = (resources.files("cyclohodge") / "data" / "schwarz_table.txt").read_text(encoding="utf-8")
    return parse_table(text.splitlines())


@lru_cache(maxsize=1)
def _canonical_rows() -> dict[tuple[Fraction, Fraction, Fraction], TableRow]:
    out = {}
    for row in schwarz_table():
        if row.triple is not None:
            out[normalize_triple(*row.triple).as_tuple()] = row
    return out


def schwarz_lookup(t: SchwarzTriple | tuple) -> FinitenessVerdict:
    """Classify an exponent-difference triple against the table."""
    raw = t.as_tuple() if isinstance(t, SchwarzTriple) else tuple(as_rational(x) for x in t)
    canon = normalize_triple(*raw)
    if triple_is_reducible(*canon.as_tuple()):
        return FinitenessVerdict(False, SchwarzType.REDUCIBLE, f"{canon} is reducible")
    if sum(1 for x in canon.as_tuple() if x == HALF) >= 2:
        return FinitenessVerdict(True, SchwarzType.DIHEDRAL, f"{canon} matches row 1 (1/2, 1/2, nu)", row=1)
    row = _canonical_rows().get(canon.as_tuple())
    if row is not None:
        tri = ", ".join(str(x) for x in row.triple)
        return FinitenessVerdict(True, row.group, f"{canon} matches row {row.number} ({tri})", row=row.number)
    return FinitenessVerdict(False, SchwarzType.INFINITE, f"{canon} matches no row")


def classify_params(p: HypergeometricParams) -> FinitenessVerdict:
    if not is_irreducible(p):
        return FinitenessVerdict(False, SchwarzType.REDUCIBLE, f"{p} is reducible")
    return schwarz_lookup(exponent_differences(p).as_tuple())


def galois_units(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1] if n > 1 else [1]


def _circle_order(a: Iterable[Fraction], b: Iterable[Fraction]) -> list[tuple[Fraction, str]]:
    # B before A on ties, so coincidences never pass as interlacing
    pts = [(x, "B") for x in b] + [(x, "A") for x in a]
    return sorted(pts, key=lambda pt: (pt[0], pt[1] != "B"))


def _interlaces(order: list[tuple[Fraction, str]]) -> bool:
    tags = [tag for _, tag in order]
    return all(tags[i] != tags[(i + 1) % len(tags)] for i in range(len(tags)))


def interlacing_data(p: HypergeometricParams, k: int) -> list[tuple[Fraction, str]]:
    def fr(x):
        return x - math.floor(x)

    return _circle_order((fr(k * p.alpha), fr(k * p.beta)), (Fraction(0), fr(k * p.gamma)))


def interlacing_finiteness(p: HypergeometricParams) -> FinitenessVerdict:
    """Finite iff ``{k*alpha, k*beta}`` and ``{0, k*gamma}`` interlace mod 1 for all units ``k``."""
    if not is_irreducible(p):
        raise ResonantInput(f"{p} is resonant")
    n = p.common_denominator
    for k in galois_units(n):
        order = interlacing_data(p, k)
        if not _interlaces(order):
            desc = " ".join(f"{format_rational(x) if x else '0'}{tag}" for x, tag in order)
            return FinitenessVerdict(False, SchwarzType.INFINITE, f"k={k}: circle order {desc}", k=k)
    return FinitenessVerdict(True, _group_type(p), f"interlacing holds for all {len(galois_units(n))} units mod {n}")


def _group_type(p: HypergeometricParams) -> SchwarzType:
    """Type of a finite projective group from its local orders alone.

    Only meaningful once finiteness is known; kept independent of the table.
    """
    orders = local_orders(p).as_tuple()
    if sorted(orders)[:2] == [2, 2]:
        return SchwarzType.DIHEDRAL
    if 5 in orders:
        return SchwarzType.ICOSAHEDRAL
    if 4 in orders:
        return SchwarzType.OCTAHEDRAL
    return SchwarzType.TETRAHEDRAL
