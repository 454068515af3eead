"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its coordinate vector in the power basis
``1, z, ..., z^(phi(N)-1)`` of ``Q[z]/Phi_N(z)``; coordinates are ints or
Fractions.  That vector is canonical, so equality and the BFS hashing in
:mod:`cyclohodge.monodromy` are exact.

The sign of a real element is decided with interval arithmetic at increasing
precision.  This always terminates: a nonzero coordinate vector is a nonzero
complex number, and the zero test is exact.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

from mpmath.ctx_iv import MPIntervalContext

from .errors import ConductorOverflow, InvalidForm, ResourceLimit
from .exact import UnitArg, format_rational

# lcm(1..8) = 840; raise to work in larger fields.
MAX_CONDUCTOR = 840

_MAX_SIGN_PRECISION = 1 << 16

Scalar = Union[int, Fraction]


def check_conductor(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"conductor must be a positive integer, got {n!r}")
    if n > MAX_CONDUCTOR:
        raise ConductorOverflow(f"conductor {n} exceeds the configured bound {MAX_CONDUCTOR}")
    return n


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficients low -> high
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for k, dk in enumerate(den):
                num[i + k] -= c * dk
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the coordinates of z^e for 0 <= e < n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce_exponents(n: int, terms) -> tuple:
    """Coordinates of sum(c * z^e) for (e, c) pairs with arbitrary integer e."""
    table = _reduction_table(n)
    d = len(table[0])
    folded: dict[int, Scalar] = {}
    for e, c in terms:
        if c:
            e %= n
            folded[e] = folded.get(e, 0) + c
    out: list[Scalar] = [0] * d
    for e, c in folded.items():
        if not c:
            continue
        if e < d:
            out[e] += c
        else:
            row = table[e]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def mul_coords(n: int, a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple:
    """Product of two reduced coordinate vectors of conductor n."""
    d = len(a)
    prod: list[Scalar] = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    out = prod[:d]
    table = _reduction_table(n)
    for e in range(d, 2 * d - 1):
        c = prod[e]
        if c:
            row = table[e % n]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def add_coords(a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _tidy(coeffs: tuple) -> tuple:
    """Store integral coefficients as ints; integer arithmetic is much faster."""
    if all(type(c) is int for c in coeffs):
        return coeffs
    return tuple(c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs)


class CyclotomicNumber:
    """An element of Q(zeta_N)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[Scalar] = ()):
        check_conductor(conductor)
        for c in coeffs:
            if isinstance(c, (float, complex)) or not isinstance(c, (int, Fraction)):
                raise TypeError(f"coefficients must be ints or Fractions, got {c!r}")
        self.conductor = conductor
        self.coeffs = _tidy(_reduce_exponents(conductor, enumerate(coeffs)))

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.coeffs = _tidy(coeffs)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 1) -> CyclotomicNumber:
        return cls(n)

    @classmethod
    def one(cls, n: int = 1) -> CyclotomicNumber:
        return cls(n, [1])

    @classmethod
    def from_rational(cls, x: Scalar, n: int = 1) -> CyclotomicNumber:
        return cls(n, [x])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CyclotomicNumber:
        """``zeta_n ** k`` with ``zeta_n = exp(2*pi*i/n)``."""
        check_conductor(n)
        return cls._raw(n, _reduce_exponents(n, [(k, 1)]))

    @classmethod
    def root_of_unity(cls, arg: UnitArg | Fraction, n: int | None = None) -> CyclotomicNumber:
        """``exp(2*pi*i*arg)``, in conductor ``n`` (default: the order of the root)."""
        t = arg.value if isinstance(arg, UnitArg) else Fraction(arg)
        t -= math.floor(t)
        if n is None:
            n = t.denominator
        if n % t.denominator:
            raise ValueError(f"exp(2 pi i {t}) does not lie in Q(zeta_{n})")
        return cls.zeta(n, t.numerator * (n // t.denominator))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def key(self) -> tuple:
        return (self.conductor, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def embed(self, m: int) -> CyclotomicNumber:
        """The same number viewed in Q(zeta_m); ``m`` must be a multiple of the conductor."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError(f"Q(zeta_{n}) does not embed in Q(zeta_{m})")
        check_conductor(m)
        step = m // n
        return CyclotomicNumber._raw(m, _reduce_exponents(m, ((e * step, c) for e, c in enumerate(self.coeffs))))

    def galois(self, k: int) -> CyclotomicNumber:
        """Image under the automorphism ``zeta -> zeta^k`` (``k`` coprime to N)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        return CyclotomicNumber._raw(n, _reduce_exponents(n, ((e * k, c) for e, c in enumerate(self.coeffs))))

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(-1)

    def is_real(self) -> bool:
        return self.conjugate().coeffs == self.coeffs

    def galois_units(self) -> list[int]:
        n = self.conductor
        return [k for k in range(1, n + 1) if math.gcd(k, n) == 1] if n > 1 else [1]

    def normalized_trace(self) -> Fraction:
        """Tr(x)/[Q(zeta_N):Q]; independent of the field x is viewed in."""
        n = self.conductor
        total = Fraction(0)
        for e, c in enumerate(self.coeffs):
            if c:
                m = n // math.gcd(e, n)
                total += Fraction(c) * _moebius(m) / euler_phi(m)
        return total

    def norm(self) -> Fraction:
        """Field norm down to Q; zero exactly when the element is zero."""
        prod = CyclotomicNumber.one(self.conductor)
        for k in self.galois_units():
            prod = prod * self.galois(k)
        return prod.rational_value()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber] | None:
        if isinstance(other, CyclotomicNumber):
            if other.conductor == self.conductor:
                return self, other
            m = math.lcm(self.conductor, other.conductor)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self, CyclotomicNumber.from_rational(other, self.conductor)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber._raw(a.conductor, add_coords(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicNumber._raw(self.conductor, tuple(c * other for c in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber._raw(a.conductor, mul_coords(a.conductor, a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        # extended Euclid in Q[z]: s * self + t * Phi_n = 1
        r0, r1 = list(cyclotomic_polynomial(n)), _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = Fraction(r1[0])
        return CyclotomicNumber(n, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicNumber._raw(self.conductor, tuple(Fraction(c) / other for c in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CyclotomicNumber.from_rational(other, self.conductor) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CyclotomicNumber.one(self.conductor)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        # must agree across conductors; rationals hash like the Fraction
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation ---------------------------------------------------------

    def to_complex(self) -> complex:
        n = self.conductor
        return sum(
            (float(c) * cmath.exp(2j * math.pi * e / n) for e, c in enumerate(self.coeffs) if c),
            0j,
        )

    def _real_interval(self, ctx: MPIntervalContext):
        n = self.conductor
        total = ctx.mpf(0)
        for e, c in enumerate(self.coeffs):
            if c:
                c = Fraction(c)
                total += ctx.mpf(c.numerator) / c.denominator * ctx.cos(2 * ctx.pi * e / n)
        return total

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {list(self.coeffs)!r})"

    def __str__(self):
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            c = Fraction(c)
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            elif c.denominator == 1:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(f"({c})*{mono}")
        body = " + ".join(terms) if terms else "0"
        return body.replace("+ -", "- ") if self.conductor <= 2 else f"[{body.replace('+ -', '- ')}]_{self.conductor}"

    def to_json(self) -> list[str]:
        return [format_rational(Fraction(c)) for c in self.coeffs]


@lru_cache(maxsize=None)
def _moebius(n: int) -> int:
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def cyclo_mul(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    """Exact product, embedding into the lcm conductor when they differ."""
    return a * b


def _float_sign(x: CyclotomicNumber) -> int:
    """Sign from double precision when the value is far from zero, else 0.

    Each term carries relative error below 1e-15 (one rounding of the
    coefficient, one of the cosine, one of the product, one of the sum), so
    a margin of 1e-12 times the coefficient mass leaves a wide safety gap.
    """
    n = x.conductor
    try:
        val = 0.0
        mass = 0.0
        for e, c in enumerate(x.coeffs):
            if c:
                fc = float(c)
                val += fc * math.cos(2 * math.pi * e / n)
                mass += abs(fc)
    except OverflowError:
        return 0
    if not math.isfinite(val) or abs(val) <= 1e-12 * (1.0 + mass):
        return 0
    return 1 if val > 0 else -1


def real_sign(x: CyclotomicNumber) -> int:
    """Exact sign (-1, 0, 1) of a real cyclotomic number."""
    if not x.is_real():
        raise ValueError(f"{x} is not real")
    if x.is_zero():
        return 0
    quick = _float_sign(x)
    if quick:
        return quick
    prec = 64
    while prec <= _MAX_SIGN_PRECISION:
        ctx = MPIntervalContext()
        ctx.prec = prec
        val = x._real_interval(ctx)
        if val.a > 0:
            return 1
        if val.b < 0:
            return -1
        prec *= 2
    raise ResourceLimit(f"could not separate {x} from zero at {_MAX_SIGN_PRECISION} bits")


class Matrix2:
    """2x2 matrix over a single cyclotomic field."""

    __slots__ = ("entries",)

    def __init__(self, a, b, c, d, conductor: int | None = None):
        ents = [e if isinstance(e, CyclotomicNumber) else CyclotomicNumber.from_rational(e) for e in (a, b, c, d)]
        n = conductor or 1
        for e in ents:
            n = math.lcm(n, e.conductor)
        self.entries = tuple(e.embed(n) for e in ents)

    @classmethod
    def identity(cls, n: int = 1) -> Matrix2:
        one, zero = CyclotomicNumber.one(n), CyclotomicNumber.zero(n)
        return cls(one, zero, zero, one)

    @classmethod
    def from_rows(cls, rows) -> Matrix2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def conductor(self) -> int:
        return self.entries[0].conductor

    @property
    def rows(self):
        a, b, c, d = self.entries
        return ((a, b), (c, d))

    def key(self) -> tuple:
        return (self.conductor,) + tuple(e.coeffs for e in self.entries)

    def __mul__(self, other: Matrix2) -> Matrix2:
        if not isinstance(other, Matrix2):
            return NotImplemented
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Matrix2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def scale(self, s) -> Matrix2:
        return Matrix2(*(x * s for x in self.entries))

    def __add__(self, other: Matrix2) -> Matrix2:
        return Matrix2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix2) -> Matrix2:
        return Matrix2(*(x - y for x, y in zip(self.entries, other.entries)))

    def det(self) -> CyclotomicNumber:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> CyclotomicNumber:
        return self.entries[0] + self.entries[3]

    def inverse(self) -> Matrix2:
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        inv = det.inverse()
        a, b, c, d = self.entries
        return Matrix2(d * inv, -b * inv, -c * inv, a * inv)

    def conj_transpose(self) -> Matrix2:
        a, b, c, d = self.entries
        return Matrix2(a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())

    def galois(self, k: int) -> Matrix2:
        return Matrix2(*(e.galois(k) for e in self.entries))

    def is_identity(self) -> bool:
        a, b, c, d = self.entries
        return a == 1 and d == 1 and b.is_zero() and c.is_zero()

    def is_scalar(self) -> bool:
        a, b, c, d = self.entries
        return b.is_zero() and c.is_zero() and a == d

    def char_poly(self) -> tuple[CyclotomicNumber, CyclotomicNumber, CyclotomicNumber]:
        """Coefficients (c0, c1, c2) of t^2 - tr*t + det, lowest first."""
        return (self.det(), -self.trace(), CyclotomicNumber.one(self.conductor))

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries, other.entries))

    def __hash__(self):
        return hash(tuple(self.entries))

    def __repr__(self):
        return f"Matrix2({', '.join(map(str, self.entries))})"

    def to_json(self) -> list[list[list[str]]]:
        return [[x.to_json() for x in row] for row in self.rows]


class Signature(NamedTuple):
    p: int
    q: int
    nullity: int


class HermitianForm2(Matrix2):
    """A 2x2 matrix equal to its conjugate transpose."""

    __slots__ = ()

    def __init__(self, a, b, c, d, conductor: int | None = None):
        super().__init__(a, b, c, d, conductor)
        a, b, c, d = self.entries
        if not (a.is_real() and d.is_real() and c == b.conjugate()):
            raise InvalidForm("matrix is not Hermitian")

    @classmethod
    def from_matrix(cls, m: Matrix2) -> HermitianForm2:
        return cls(*m.entries)

    def galois(self, k: int) -> HermitianForm2:
        return HermitianForm2(*(e.galois(k) for e in self.entries))

    def scale(self, s) -> HermitianForm2:
        return HermitianForm2(*(x * s for x in self.entries))

    def congruent(self, g: Matrix2) -> HermitianForm2:
        """``g* . H . g``."""
        return HermitianForm2.from_matrix(g.conj_transpose() * self * g)


def hermitian_signature(h: Matrix2) -> Signature:
    """Inertia (p, q, nullity) from the leading principal minors."""
    if not isinstance(h, HermitianForm2):
        h = HermitianForm2.from_matrix(h)
    a, b, c, d = h.entries
    det_sign = real_sign(h.det())
    if det_sign < 0:
        return Signature(1, 1, 0)
    if det_sign > 0:
        # a and d share the sign of the form
        return Signature(2, 0, 0) if real_sign(a) > 0 else Signature(0, 2, 0)
    lead = a if not a.is_zero() else d
    s = real_sign(lead)
    if s > 0:
        return Signature(1, 0, 1)
    if s < 0:
        return Signature(0, 1, 1)
    # a = d = 0 and det = -|b|^2 = 0
    return Signature(0, 0, 2)
