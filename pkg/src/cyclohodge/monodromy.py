"""Explicit monodromy of the Gauss hypergeometric equation.

Levelt's construction over Q(zeta_N), N the common denominator of the
parameters::

    g_inf      = companion((t - e(alpha)) (t - e(beta)))
    g_0^(-1)   = companion((t - 1) (t - e(gamma)))
    g_1        = (g_inf g_0)^(-1)

so that ``g_0 g_1 g_inf = 1``, ``g_0`` has eigenvalues ``1, e(1 - gamma)``
(the Riemann scheme at 0), and ``g_1`` is a pseudo-reflection with special
eigenvalue ``e(gamma - alpha - beta)``.  Here ``e(x) = exp(2 pi i x)``.

All group elements have entries in Z[zeta_N], so the closure search hashes
exact integer coordinate vectors.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import (
    CyclotomicNumber,
    HermitianForm2,
    Matrix2,
    Signature,
    add_coords,
    check_conductor,
    hermitian_signature,
    mul_coords,
    real_sign,
)
from .errors import ResonantInput
from .exact import as_rational
from .hypergeometric import HypergeometricParams, is_irreducible
from .schwarz import FinitenessVerdict, classify_params, galois_units, interlacing_finiteness

DEFAULT_BFS_BOUND = 20000
REP_FORMAT = "cyclohodge.rep/1"


@dataclass(frozen=True)
class MonodromyRep:
    conductor: int
    g0: Matrix2
    g1: Matrix2
    g_inf: Matrix2
    source_params: HypergeometricParams | None = None

    def generators(self) -> dict[str, Matrix2]:
        return {"g0": self.g0, "g1": self.g1, "gInf": self.g_inf}

    def product_is_identity(self) -> bool:
        return (self.g0 * self.g1 * self.g_inf).is_identity()

    def galois(self, k: int) -> MonodromyRep:
        params = self.source_params.scaled(k) if self.source_params is not None else None
        return MonodromyRep(self.conductor, self.g0.galois(k), self.g1.galois(k), self.g_inf.galois(k), params)

    def to_json(self) -> dict:
        out = {
            "format": REP_FORMAT,
            "conductor": self.conductor,
            "generators": {name: g.to_json() for name, g in self.generators().items()},
        }
        if self.source_params is not None:
            out["params"] = self.source_params.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> MonodromyRep:
        if data.get("format") != REP_FORMAT:
            raise ValueError(f"unsupported representation format {data.get('format')!r}")
        n = data["conductor"]

        def mat(rows):
            return Matrix2.from_rows(
                [[CyclotomicNumber(n, [as_rational(c) for c in entry]) for entry in row] for row in rows]
            )

        gens = data["generators"]
        params = data.get("params")
        return cls(
            n,
            mat(gens["g0"]),
            mat(gens["g1"]),
            mat(gens["gInf"]),
            HypergeometricParams.of(params["alpha"], params["beta"], params["gamma"]) if params else None,
        )


def _companion(c0: CyclotomicNumber, c1: CyclotomicNumber) -> Matrix2:
    """Companion matrix of t^2 + c1 t + c0."""
    n = c0.conductor
    return Matrix2(CyclotomicNumber.zero(n), -c0, CyclotomicNumber.one(n), -c1)


def levelt_generators(p: HypergeometricParams) -> MonodromyRep:
    if not is_irreducible(p):
        raise ResonantInput(f"{p} is resonant; Levelt's construction needs irreducible parameters")
    n = check_conductor(p.common_denominator)
    ea = CyclotomicNumber.root_of_unity(p.alpha, n)
    eb = CyclotomicNumber.root_of_unity(p.beta, n)
    ec = CyclotomicNumber.root_of_unity(p.gamma, n)
    g_inf = _companion(ea * eb, -(ea + eb))
    g0_inv = _companion(ec, -(ec + 1))
    g0 = g0_inv.inverse()
    g1 = (g_inf * g0).inverse()
    rep = MonodromyRep(n, g0, g1, g_inf, p)
    assert rep.product_is_identity()
    return rep


# -- invariant Hermitian form ---------------------------------------------


def _nullspace(rows: list[list[CyclotomicNumber]], ncols: int) -> list[list[CyclotomicNumber]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    n = rows[0][0].conductor if rows else 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [CyclotomicNumber.zero(n) for _ in range(ncols)]
        v[free] = CyclotomicNumber.one(n)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(v)
    return basis


def _normalize_form(h: HermitianForm2) -> HermitianForm2:
    a, _, _, d = h.entries
    lead = a if not a.is_zero() else d
    if lead.is_zero():
        return h
    return h.scale(lead.inverse())


def invariant_form(rep: MonodromyRep) -> HermitianForm2 | None:
    """Nonzero Hermitian H with g* H g = H for every generator, or None.

    For irreducible representations H is unique up to a real scalar; it is
    scaled so the first nonzero diagonal entry equals 1.
    """
    n = rep.conductor
    zero, one = CyclotomicNumber.zero(n), CyclotomicNumber.one(n)
    units = []
    for i in range(4):
        ents = [zero] * 4
        ents[i] = one
        units.append(Matrix2(*ents))
    equations: list[list[CyclotomicNumber]] = []
    for g in (rep.g0, rep.g_inf):
        gs = g.conj_transpose()
        images = [gs * e * g - e for e in units]
        for entry in range(4):
            equations.append([img.entries[entry] for img in images])
    basis = _nullspace(equations, 4)
    # a skew-Hermitian solution m gives the Hermitian w*m + conj(w)*m* for any
    # non-real w; over Q itself that needs i, so the form then lives in Q(i)
    twists = [one, CyclotomicNumber.zeta(n) if n > 2 else CyclotomicNumber.zeta(4)]
    for v in basis:
        m = Matrix2(*v)
        ms = m.conj_transpose()
        for w in twists:
            cand = m.scale(w) + ms.scale(w.conjugate())
            if any(not e.is_zero() for e in cand.entries):
                return _normalize_form(HermitianForm2.from_matrix(cand))
    return None


def form_signatures(h: HermitianForm2, conductor: int | None = None) -> dict[int, Signature]:
    """Signature of every Galois conjugate of ``h``, keyed by the unit k."""
    n = conductor or h.conductor
    return {k: hermitian_signature(h.galois(k) if k != 1 else h) for k in galois_units(n)}


# -- closure ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupClosureReport:
    finite_within_bound: bool
    order_if_found: int | None
    elements_explored: int
    bound: int
    stop_reason: str  # "closed", "bound" or "infinite_order"
    witness: str | None = None

    def to_json(self) -> dict:
        out = {
            "finite_within_bound": self.finite_within_bound,
            "order_if_found": self.order_if_found,
            "elements_explored": self.elements_explored,
            "bound": self.bound,
            "stop_reason": self.stop_reason,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _mm(n: int, x: tuple, y: tuple) -> tuple:
    a, b, c, d = x
    e, f, g, h = y
    return (
        add_coords(mul_coords(n, a, e), mul_coords(n, b, g)),
        add_coords(mul_coords(n, a, f), mul_coords(n, b, h)),
        add_coords(mul_coords(n, c, e), mul_coords(n, d, g)),
        add_coords(mul_coords(n, c, f), mul_coords(n, d, h)),
    )


class _OrderTest:
    """Decides whether a matrix provably has infinite order.

    Finite order forces both eigenvalues to be roots of unity, so
    ``s = tr^2 / det = 2 + r + 1/r`` (``r`` a root of unity) is real and lies
    in ``[0, 4]`` under every embedding, and ``s = 4`` forces a scalar matrix.
    Floats only pre-screen; every positive answer is confirmed exactly.
    """

    def __init__(self, n: int):
        self.n = n
        self.units = galois_units(n)
        d = len(CyclotomicNumber.one(n).coeffs)
        self.cos = {k: [math.cos(2 * math.pi * k * e / n) for e in range(d)] for k in self.units}
        self.root_exp = math.lcm(2, n)

    def det_is_root_of_unity(self, det: CyclotomicNumber) -> bool:
        return det ** self.root_exp == 1

    def infinite(self, m: Matrix2) -> bool:
        det = m.det()
        if not self.det_is_root_of_unity(det):
            return True
        tr = m.trace()
        s = tr * tr * det.conjugate()
        if s != s.conjugate():
            return True
        if s == 4:
            return not m.is_scalar()
        for k in self.units:
            approx = sum(float(c) * w for c, w in zip(s.coeffs, self.cos[k]))
            if -1e-9 < approx < 4 + 1e-9:
                continue
            sk = s.galois(k)
            if real_sign(sk) < 0 or real_sign(4 - sk) < 0:
                return True
        return False


def _word(parents: dict, key, names: list[str]) -> str:
    letters = []
    while parents[key] is not None:
        key, gi = parents[key]
        letters.append(names[gi])
    return "*".join(reversed(letters)) or "1"


def _mult_matrix(n: int, c: tuple) -> list[list[int]]:
    """Integer matrix of multiplication by ``c`` on power-basis coordinates."""
    d = len(c)
    cols = []
    for i in range(d):
        unit = [0] * d
        unit[i] = 1
        cols.append(mul_coords(n, c, unit))
    return [[cols[i][r] for i in range(d)] for r in range(d)]


def _right_action(n: int, g: Matrix2) -> list[list[int]]:
    """Matrix B with ``vec(x g) = B vec(x)`` for coordinate vectors of length 4d.

    Block ``(i, j)`` of ``x g`` is ``sum_k x_ik g_kj``; the block index of
    entry ``(i, j)`` is ``2i + j``.
    """
    d = len(g.entries[0].coeffs)
    big = [[0] * (4 * d) for _ in range(4 * d)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                m = _mult_matrix(n, g.entries[2 * k + j].coeffs)
                row, col = (2 * i + j) * d, (2 * i + k) * d
                for r in range(d):
                    big[row + r][col : col + d] = m[r]
    return big


_INT64_SAFE = 1 << 62


def _is_integral(g: Matrix2) -> bool:
    return all(Fraction(c).denominator == 1 for e in g.entries for c in e.coeffs)


def _vector_to_matrix(n: int, row, d: int) -> Matrix2:
    vals = [int(v) for v in row]
    return Matrix2(*(CyclotomicNumber._raw(n, tuple(vals[b * d : (b + 1) * d])) for b in range(4)))


def closure_bfs(rep: MonodromyRep, bound: int = DEFAULT_BFS_BOUND, certify_infinite: bool = False) -> GroupClosureReport:
    """Breadth-first closure of the generators and their inverses.

    Stops when the set is closed under right multiplication, or once more
    than ``bound`` elements are known.  With ``certify_infinite`` the search
    also stops at the first element provably of infinite order; the group
    then cannot close under any bound, so the finite/infinite bit is
    unchanged.

    Elements are stored as integer coordinate vectors and a whole BFS level
    is multiplied at once; int64 is used while entries stay small and
    Python integers afterwards.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = rep.conductor
    named = []
    for name, g in rep.generators().items():
        named.append((name, g))
        named.append((f"{name}^-1", g.inverse()))
    names, gens, seen_gen = [], [], set()
    for name, g in named:
        k = g.key()
        if k not in seen_gen:
            seen_gen.add(k)
            names.append(name)
            gens.append(g)
    if not all(_is_integral(g) for g in gens):
        return _closure_generic(rep, gens, names, bound, certify_infinite)
    tester = _OrderTest(n) if certify_infinite else None

    d = len(CyclotomicNumber.one(n).coeffs)
    actions = [_right_action(n, g) for g in gens]
    growth = max(sum(abs(v) for v in row) for a in actions for row in a)
    actions_t = [np.array(a, dtype=object).T for a in actions]
    actions64_t = [np.array(a, dtype=np.int64).T for a in actions] if growth < _INT64_SAFE else None

    ident = [0] * (4 * d)
    ident[0] = ident[3 * d] = 1
    ident = tuple(ident)
    parents: dict = {ident: None}
    frontier = [ident]
    while frontier:
        base = None
        if actions64_t is not None:
            try:
                base = np.array(frontier, dtype=np.int64)
            except OverflowError:
                base = None
            if base is not None and int(np.abs(base).max()) * growth >= _INT64_SAFE:
                base = None
        use64 = base is not None
        if not use64:
            base = np.array(frontier, dtype=object)
        nxt = []
        for gi in range(len(gens)):
            prods = base @ (actions64_t[gi] if use64 else actions_t[gi])
            for x, y in zip(frontier, prods.tolist()):
                y = tuple(y)
                if y in parents:
                    continue
                parents[y] = (x, gi)
                if tester is not None and tester.infinite(_vector_to_matrix(n, y, d)):
                    return GroupClosureReport(
                        False, None, len(parents), bound, "infinite_order", _word(parents, y, names)
                    )
                if len(parents) > bound:
                    return GroupClosureReport(False, None, len(parents), bound, "bound")
                nxt.append(y)
        frontier = nxt
    return GroupClosureReport(True, len(parents), len(parents), bound, "closed")


def _closure_generic(rep, gens, names, bound, certify_infinite) -> GroupClosureReport:
    """Closure for generators with non-integral coordinates (rarely needed)."""
    n = rep.conductor
    gens = [tuple(e.coeffs for e in g.entries) for g in gens]
    tester = _OrderTest(n) if certify_infinite else None
    ident = tuple(e.coeffs for e in Matrix2.identity(n).entries)
    parents: dict = {ident: None}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(gens):
            y = _mm(n, x, g)
            if y in parents:
                continue
            parents[y] = (x, gi)
            if tester is not None:
                m = Matrix2(*(CyclotomicNumber._raw(n, c) for c in y))
                if tester.infinite(m):
                    return GroupClosureReport(
                        False, None, len(parents), bound, "infinite_order", _word(parents, y, names)
                    )
            if len(parents) > bound:
                return GroupClosureReport(False, None, len(parents), bound, "bound")
            queue.append(y)
    return GroupClosureReport(True, len(parents), len(parents), bound, "closed")


def projective_order(rep: MonodromyRep, bound: int = DEFAULT_BFS_BOUND) -> int | None:
    """Order of the image in PGL_2, or None if the group does not close."""
    report = closure_bfs(rep, bound)
    if not report.finite_within_bound:
        return None
    return report.order_if_found // len(_scalar_subgroup(rep, bound))


def _scalar_subgroup(rep: MonodromyRep, bound: int) -> list[tuple]:
    n = rep.conductor
    gens = []
    for g in rep.generators().values():
        gens += [g, g.inverse()]
    gens = [tuple(e.coeffs for e in g.entries) for g in gens]
    ident = tuple(e.coeffs for e in Matrix2.identity(n).entries)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _mm(n, x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    zero = tuple(0 for _ in ident[1])
    return [m for m in seen if m[1] == zero and m[2] == zero and m[0] == m[3]]


# -- combined verdict -------------------------------------------------------


@dataclass(frozen=True)
class FinitenessReport:
    params: HypergeometricParams
    schwarz: FinitenessVerdict
    interlacing: FinitenessVerdict
    form: HermitianForm2 | None
    signatures: dict[int, Signature]
    closure: GroupClosureReport
    finite: bool | None
    discrepancy: str | None = None
    methods: dict[str, bool] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.discrepancy is None

    @property
    def verdict(self) -> str:
        if self.finite is None:
            return "Unknown"
        return "Finite" if self.finite else "Infinite"

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "finite": self.finite,
            "verdict": self.verdict,
            "agree": self.agree,
            "discrepancy": self.discrepancy,
            "schwarz": self.schwarz.to_json(),
            "interlacing": self.interlacing.to_json(),
            "invariant_form": None if self.form is None else self.form.to_json(),
            "form_signatures": {
                str(k): {"p": s.p, "q": s.q, "nullity": s.nullity} for k, s in sorted(self.signatures.items())
            },
            "closure": self.closure.to_json(),
        }


def _definite(s: Signature) -> bool:
    return s.nullity == 0 and (s.p == 0 or s.q == 0)


def finiteness_report(
    p: HypergeometricParams, bound: int = DEFAULT_BFS_BOUND, certify_infinite: bool = True
) -> FinitenessReport:
    """Run every finiteness method and cross-check them.

    A disagreement is reported in ``discrepancy`` with ``finite = None``;
    it is never resolved in favour of one method.
    """
    if not is_irreducible(p):
        raise ResonantInput(f"{p} is resonant")
    schwarz = classify_params(p)
    inter = interlacing_finiteness(p)
    rep = levelt_generators(p)
    form = invariant_form(rep)
    signatures = form_signatures(form, rep.conductor) if form is not None else {}
    form_finite = form is not None and all(_definite(s) for s in signatures.values())
    closure = closure_bfs(rep, bound, certify_infinite=certify_infinite)
    methods = {
        "schwarz": schwarz.finite,
        "interlacing": inter.finite,
        "invariant_form": form_finite,
        "closure": closure.finite_within_bound,
    }
    discrepancy = None
    if len(set(methods.values())) != 1:
        discrepancy = "methods disagree: " + ", ".join(f"{k}={'finite' if v else 'infinite'}" for k, v in methods.items())
    finite = None if discrepancy else schwarz.finite
    return FinitenessReport(p, schwarz, inter, form, signatures, closure, finite, discrepancy, methods)
