"""Fibration-level bookkeeping: Fujita splitting, semistable reduction, Kodaira check.

The Fujita report splits ``V = f_* omega_{X/B}`` along the characters of
the fiber family.  A character whose eigenspace is purely of type (1,0)
(or purely (0,1)) gives a unitary flat summand, provided its local
monodromies become trivial after the base change ``B -> P^1``.  Everything
else is collected into a single ample summand; that ampleness is taken
from Fujita's splitting theorem and is not verified here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cover import BranchData, cover_genus, eigenspace_table, hurwitz_base_genus, validate
from .cyclotomic import Matrix2
from .errors import GcdNotOne, InconsistentSpec
from .hypergeometric import character_to_hg, resolve_ordering
from .monodromy import DEFAULT_BFS_BOUND, MonodromyRep, finiteness_report, levelt_generators

FUJITA_FORMAT = "cyclohodge.fujita/1"


# -- Hirzebruch-Jung strings ------------------------------------------------


@dataclass(frozen=True)
class QuotientSingularity:
    """The cyclic quotient singularity ``1/n (1, q)``."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.q < self.n:
            raise ValueError(f"need 1 <= q < n, got n={self.n}, q={self.q}")
        if math.gcd(self.n, self.q) != 1:
            raise GcdNotOne(f"gcd({self.n}, {self.q}) = {math.gcd(self.n, self.q)}")


@dataclass(frozen=True)
class HJString:
    coefficients: tuple[int, ...]

    def value(self) -> Fraction:
        """``c1 - 1/(c2 - 1/(...))``."""
        acc = Fraction(self.coefficients[-1])
        for c in reversed(self.coefficients[:-1]):
            acc = c - 1 / acc
        return acc

    def self_intersections(self) -> tuple[int, ...]:
        return tuple(-c for c in self.coefficients)


def hj_resolve(s: QuotientSingularity | tuple[int, int]) -> HJString:
    """Negative-regular continued fraction of ``n/q``; every coefficient is at least 2."""
    if not isinstance(s, QuotientSingularity):
        s = QuotientSingularity(*s)
    n, q = s.n, s.q
    out = []
    while q:
        c = -(-n // q)
        out.append(c)
        n, q = q, c * q - n
    return HJString(tuple(out))


def semistable_base_order(multiplicities: Sequence[int]) -> int:
    """Least base-change order divisible by every fiber multiplicity."""
    if not multiplicities:
        raise ValueError("need at least one multiplicity")
    if any(m < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    return math.lcm(*multiplicities)


# -- Kodaira fibrations -----------------------------------------------------


@dataclass(frozen=True)
class KodairaCheck:
    consistent: bool
    e: int
    three_sigma: int
    degV_positive: bool

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "e": self.e,
            "three_sigma": self.three_sigma,
            "degV_positive": self.degV_positive,
        }


def kodaira_degree_check(K2: int, b: int, g: int, sigma: int) -> KodairaCheck:
    """Check ``3 sigma = K^2 - 2e`` with ``e = 4(b-1)(g-1)`` for a smooth fibration."""
    if b < 2 or g < 2:
        raise ValueError(f"base and fiber genus must be at least 2, got b={b}, g={g}")
    e = 4 * (b - 1) * (g - 1)
    return KodairaCheck(3 * sigma == K2 - 2 * e, e, 3 * sigma, sigma > 0)


# -- Fujita decomposition ---------------------------------------------------


class SummandKind(str, enum.Enum):
    AMPLE = "Ample"
    UNITARY_FLAT = "UnitaryFlat"


class Monodromy(str, enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNKNOWN = "Unknown"


class Semiample(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class BaseCover:
    """A Galois cover ``B -> P^1`` of the given degree.

    ``ramification`` maps labels of the fiber family's singular values to the
    ramification order above them; unlisted values are unramified.
    """

    degree: int
    ramification: Mapping[str, int]

    def order_at(self, label: str) -> int:
        return self.ramification.get(label, 1)


@dataclass(frozen=True)
class FibrationSpec:
    fiber_branch: BranchData
    base_genus: int
    base_cover: BaseCover | None = None
    # singular value label -> character j -> order of the local monodromy
    singular_fiber_local_orders: Mapping[str, Mapping[int, int | None]] | None = None

    def __post_init__(self):
        if self.base_genus < 0:
            raise InconsistentSpec(f"base genus must be nonnegative, got {self.base_genus}")
        if self.base_cover is not None:
            ram = [e for e in self.base_cover.ramification.values() if e > 1]
            g = hurwitz_base_genus(self.base_cover.degree, 0, ram)
            if g != self.base_genus:
                raise InconsistentSpec(
                    f"base cover of degree {self.base_cover.degree} has genus {g}, not {self.base_genus}"
                )


@dataclass(frozen=True)
class Summand:
    kind: SummandKind
    rank: int
    character: int | None
    monodromy: Monodromy | None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "rank": self.rank,
            "character": self.character,
            "monodromy": None if self.monodromy is None else self.monodromy.value,
        }


@dataclass(frozen=True)
class CharacterLine:
    """One row of the eigensheaf table shown in the text rendering."""

    j: int
    h10: int
    h01: int
    degree: int
    placement: str


@dataclass(frozen=True)
class FujitaReport:
    total_rank: int
    summands: tuple[Summand, ...]
    semiample: Semiample
    rationale: tuple[str, ...]
    characters: tuple[CharacterLine, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "format": FUJITA_FORMAT,
            "total_rank": self.total_rank,
            "summands": [s.to_json() for s in self.summands],
            "semiample": self.semiample.value,
            "rationale": list(self.rationale),
        }

    def render_text(self) -> str:
        lines = [" j  h10  h01  deg L_j  placement", "--  ---  ---  -------  ---------"]
        for c in self.characters:
            lines.append(f"{c.j:>2}  {c.h10:>3}  {c.h01:>3}  {c.degree:>7}  {c.placement}")
        lines.append("")
        parts = []
        for s in self.summands:
            tag = s.kind.value if s.character is None else f"{s.kind.value}[j={s.character}]"
            extra = f", {s.monodromy.value}" if s.monodromy is not None else ""
            parts.append(f"{tag}({s.rank}{extra})")
        lines.append(f"V = {' + '.join(parts) if parts else '0'}   (rank {self.total_rank})")
        lines.append(f"semi-ample: {self.semiample.value}")
        lines.extend(f"  - {r}" for r in self.rationale)
        return "\n".join(lines)


def _matrix_order(g: Matrix2, cap: int) -> int | None:
    """Exact order of ``g``, or None when it exceeds ``cap`` (or is infinite)."""
    power = g
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power * g
    return None


def _hypergeometric_local_orders(rep: MonodromyRep, labels: tuple[str, str, str]) -> dict[str, int | None]:
    # a root of unity in Q(zeta_N) has order dividing lcm(2, N), so a
    # finite-order local monodromy has order at most that
    cap = math.lcm(2, rep.conductor)
    return {
        labels[0]: _matrix_order(rep.g0, cap),
        labels[1]: _matrix_order(rep.g1, cap),
        labels[2]: _matrix_order(rep.g_inf, cap),
    }


def semiample_verdict(base_genus: int, flat_monodromy: Sequence[Monodromy]) -> tuple[Semiample, str]:
    """Semi-ampleness from the monodromy of the unitary flat summands."""
    if base_genus <= 1:
        return Semiample.YES, f"base genus {base_genus} <= 1: V is semi-ample"
    if Monodromy.INFINITE in flat_monodromy:
        return Semiample.NO, "a unitary flat summand has infinite monodromy: V is not semi-ample"
    if Monodromy.UNKNOWN in flat_monodromy:
        return Semiample.UNDETERMINED, "some flat summand has undetermined monodromy"
    return Semiample.YES, "every unitary flat summand has finite monodromy: V is semi-ample"


def fujita_decomposition(spec: FibrationSpec, bound: int = DEFAULT_BFS_BOUND) -> FujitaReport:
    b = validate(spec.fiber_branch)
    genus = cover_genus(b)
    table = eigenspace_table(b)
    four_points = len(b) == 4
    if four_points:
        idx = resolve_ordering(b)
        singular = (b.labels[idx[0]], b.labels[idx[1]], b.labels[idx[3]])
    else:
        singular = ()

    rationale: list[str] = []
    flat: list[Summand] = []
    ample_rank = 0
    lines = []
    for row in table:
        if row.h10 == 0:
            lines.append(CharacterLine(row.j, row.h10, row.h01, row.eigensheaf_degree, "-"))
            continue
        if not row.unitary_flat:
            ample_rank += row.h10
            rationale.append(f"j={row.j}: mixed Hodge type ({row.h10},{row.h01}), placed in the ample part")
            lines.append(CharacterLine(row.j, row.h10, row.h01, row.eigensheaf_degree, "ample"))
            continue
        summand, notes, placement = _flat_summand(spec, b, row.j, row.h10, four_points, singular, bound)
        rationale.extend(notes)
        if summand is None:
            ample_rank += row.h10
        else:
            flat.append(summand)
        lines.append(CharacterLine(row.j, row.h10, row.h01, row.eigensheaf_degree, placement))

    summands = ([Summand(SummandKind.AMPLE, ample_rank, None, None)] if ample_rank else []) + flat
    assert sum(s.rank for s in summands) == genus

    semiample, reason = semiample_verdict(spec.base_genus, [s.monodromy for s in flat])
    rationale.append(reason)
    return FujitaReport(genus, tuple(summands), semiample, tuple(rationale), tuple(lines))


def _flat_summand(spec, b, j, rank, four_points, singular, bound):
    """Summand for a flat character ``j``, with notes and a table placement."""
    notes = []
    if rank == 1:
        notes.append(f"j={j}: rank-1 unitary flat summand is torsion, so its monodromy is finite")
        return Summand(SummandKind.UNITARY_FLAT, 1, j, Monodromy.FINITE), notes, "flat, torsion"

    override = spec.singular_fiber_local_orders
    rep = None
    if override is not None:
        orders = {label: per_j.get(j) for label, per_j in override.items()}
    elif four_points:
        rep = levelt_generators(character_to_hg(b, j))
        orders = _hypergeometric_local_orders(rep, singular)
    else:
        orders = None

    if orders is None:
        notes.append(f"j={j}: no local monodromy data for a {len(b)}-point family; extension not checked")
        return Summand(SummandKind.UNITARY_FLAT, rank, j, Monodromy.UNKNOWN), notes, "flat, unchecked"

    cover = spec.base_cover
    blocked = []
    for label in sorted(orders):
        order = orders[label]
        ram = cover.order_at(label) if cover is not None else 1
        if order is None or ram % order:
            blocked.append(f"{label} (order {'infinite' if order is None else order}, ramification {ram})")
    if blocked:
        notes.append(f"j={j}: local monodromy does not become trivial at {', '.join(blocked)}; placed in the ample part")
        return None, notes, "ample (no flat extension)"
    notes.append(f"j={j}: local monodromy orders divide the base ramification, so the flat bundle extends")

    if rank > 2 or not four_points:
        notes.append(f"j={j}: rank {rank} flat summand is outside hypergeometric reach")
        return Summand(SummandKind.UNITARY_FLAT, rank, j, Monodromy.UNKNOWN), notes, "flat, unknown"

    p = rep.source_params if rep is not None else character_to_hg(b, j)
    report = finiteness_report(p, bound)
    if report.finite is None:
        verdict = Monodromy.UNKNOWN
        notes.append(f"j={j}: {report.discrepancy}")
    else:
        verdict = Monodromy.FINITE if report.finite else Monodromy.INFINITE
        notes.append(f"j={j}: hypergeometric parameters {p} give {verdict.value.lower()} monodromy")
    return Summand(SummandKind.UNITARY_FLAT, rank, j, verdict), notes, f"flat, {verdict.value.lower()}"
