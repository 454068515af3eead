"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line; the lines are collected again in the terminal summary.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from pathlib import Path

from cyclohodge.cli import execute
from cyclohodge.cover import BranchData, cover_genus, eigenspace_h10, eigenspace_table, hurwitz_base_genus
from cyclohodge.fibration import (
    BaseCover,
    FibrationSpec,
    Monodromy,
    Semiample,
    SummandKind,
    fujita_decomposition,
    hj_resolve,
    kodaira_degree_check,
    semistable_base_order,
)
from cyclohodge.hypergeometric import (
    HypergeometricParams,
    character_to_hg,
    exponent_differences,
    is_irreducible,
    local_orders,
)
from cyclohodge.monodromy import closure_bfs, form_signatures, invariant_form, levelt_generators
from cyclohodge.schwarz import classify_params, interlacing_finiteness, schwarz_lookup

from conftest import criterion, irreducible_sweep, moving_quartic_cover

SEVENTHS = HypergeometricParams.of("8/7", "3/7", "9/7")
COVER_JSON = {
    "n": 7,
    "branch": [
        {"label": "0", "m": 1},
        {"label": "1", "m": 1},
        {"label": "x", "m": 1},
        {"label": "inf", "m": 4},
    ],
}
FROZEN = json.loads((Path(__file__).parent / "data" / "finite_group_orders.json").read_text())


def test_criterion_01_genus():
    with criterion(1, "analyze-cover on n=7, m=(1,1,1,4) reports genus 6"):
        assert execute("analyze-cover", COVER_JSON)["genus"] == 6


def test_criterion_02_dimensions():
    with criterion(2, "eigenspace dimensions (2,2,1,1,0,0)"):
        assert execute("analyze-cover", COVER_JSON)["dims"] == [2, 2, 1, 1, 0, 0]


def test_criterion_03_degrees():
    with criterion(3, "eigensheaf degrees (1,1,2,2,3,3)"):
        assert execute("analyze-cover", COVER_JSON)["degrees"] == [1, 1, 2, 2, 3, 3]


def test_criterion_04_unitary_flat_flags():
    with criterion(4, "j=1,2 unitary flat of rank 2; j=3,4 mixed of type (1,1)"):
        rows = {r["j"]: r for r in execute("analyze-cover", COVER_JSON)["rows"]}
        for j in (1, 2):
            assert rows[j]["unitary_flat"] and rows[j]["rank"] == 2 and (rows[j]["h10"], rows[j]["h01"]) == (2, 0)
        for j in (3, 4):
            assert not rows[j]["unitary_flat"] and (rows[j]["h10"], rows[j]["h01"]) == (1, 1)


def test_criterion_05_hypergeometric_identification():
    with criterion(5, "j=1 system gives (alpha, beta, gamma) = (8/7, 3/7, 9/7) exactly"):
        p = character_to_hg(moving_quartic_cover(), 1)
        assert (p.alpha, p.beta, p.gamma) == (Fraction(8, 7), Fraction(3, 7), Fraction(9, 7))
        assert p == SEVENTHS


def test_criterion_06_local_orders_and_irreducibility():
    with criterion(6, "local orders (7,7,7) at 0, 1, inf and irreducible"):
        assert local_orders(SEVENTHS).as_tuple() == (7, 7, 7)
        assert is_irreducible(SEVENTHS)


def test_criterion_07_four_methods_say_infinite():
    with criterion(7, "Schwarz table, interlacing, invariant form and BFS(2*10^4) all report infinite"):
        assert not schwarz_lookup(exponent_differences(SEVENTHS).as_tuple()).finite
        inter = interlacing_finiteness(SEVENTHS)
        assert not inter.finite and inter.k == 3
        rep = levelt_generators(SEVENTHS)
        sigs = form_signatures(invariant_form(rep), rep.conductor)
        assert sigs[3].p == 1 and sigs[3].q == 1
        closure = closure_bfs(rep, 20_000)
        assert not closure.finite_within_bound and closure.stop_reason == "bound"
        assert closure.elements_explored >= 20_000


def test_criterion_08_schwarz_agrees_with_interlacing():
    sweep = irreducible_sweep(12)
    with criterion(8, f"Schwarz table equals interlacing on all {len(sweep)} irreducible triples with N <= 12"):
        disagreements = [p for p in sweep if classify_params(p).finite != interlacing_finiteness(p).finite]
        assert disagreements == []
        assert len(sweep) == 2070


def test_criterion_09_closure_matches_verdicts():
    sweep = irreducible_sweep(12)
    with criterion(9, "BFS closes exactly on the finite cases; frozen group orders stable"):
        # alpha and beta are symmetric, so the frozen orders are keyed on the unordered pair
        frozen = {(frozenset((g["alpha"], g["beta"])), g["gamma"]): g["order"] for g in FROZEN["groups"]}
        infinite = []
        for p in sweep:
            finite = classify_params(p).finite
            rep = levelt_generators(p)
            certified = closure_bfs(rep, 20_000, certify_infinite=True)
            assert certified.finite_within_bound == finite, p
            if finite:
                plain = closure_bfs(rep, 20_000)
                assert plain.finite_within_bound and plain.order_if_found == certified.order_if_found
                j = p.to_json()
                assert frozen[(frozenset((j["alpha"], j["beta"])), j["gamma"])] == plain.order_if_found
            else:
                assert certified.stop_reason == "infinite_order"
                infinite.append(rep)
        assert len(frozen) == len(sweep) - len(infinite) == 67
        # the plain search on a fixed sample of the infinite cases never closes
        for rep in random.Random(9).sample(infinite, 25):
            assert not closure_bfs(rep, 20_000).finite_within_bound


def test_criterion_10_hurwitz():
    with criterion(10, "degree-7 cover fully ramified over three points has genus 3"):
        assert hurwitz_base_genus(7, 0, [7, 7, 7]) == 3


def test_criterion_11_hirzebruch_jung():
    with criterion(11, "HJ strings (7,3) -> [3,2,2], (7,6) -> six 2s, round trip for n <= 50"):
        assert hj_resolve((7, 3)).coefficients == (3, 2, 2)
        assert hj_resolve((7, 6)).coefficients == (2,) * 6
        for n in range(2, 51):
            for q in range(1, n):
                if math.gcd(n, q) == 1:
                    assert hj_resolve((n, q)).value() == Fraction(n, q)


def test_criterion_12_base_orders():
    with criterion(12, "semistable base orders 28 and 42"):
        assert semistable_base_order([7, 4, 2, 1, 1]) == 28
        assert semistable_base_order([1, 2, 3, 7, 3, 2, 1]) == 42


def test_criterion_13_fujita_report():
    with criterion(13, "Fujita report: Ample(2) + Q1(2, Infinite) + Q2(2, Infinite), not semi-ample; genus <= 1 and rank-1 rules give Yes"):
        spec = FibrationSpec(moving_quartic_cover(), 3, BaseCover(7, {"0": 7, "1": 7, "inf": 7}))
        r = fujita_decomposition(spec)
        assert r.total_rank == 6
        assert [(s.kind, s.rank, s.character, s.monodromy) for s in r.summands] == [
            (SummandKind.AMPLE, 2, None, None),
            (SummandKind.UNITARY_FLAT, 2, 1, Monodromy.INFINITE),
            (SummandKind.UNITARY_FLAT, 2, 2, Monodromy.INFINITE),
        ]
        assert r.semiample is Semiample.NO
        assert fujita_decomposition(FibrationSpec(moving_quartic_cover(), 1)).semiample is Semiample.YES
        rank_one = fujita_decomposition(FibrationSpec(BranchData.from_exponents(3, [1, 1, 1]), 2))
        assert all(s.rank == 1 for s in rank_one.summands if s.kind is SummandKind.UNITARY_FLAT)
        assert rank_one.semiample is Semiample.YES


def test_criterion_14_kodaira():
    with criterion(14, "3 sigma = K^2 - 2e on a grid, positivity flag equals sigma > 0"):
        for b in range(2, 6):
            for g in range(2, 6):
                e = 4 * (b - 1) * (g - 1)
                for sigma in range(-4, 9):
                    c = kodaira_degree_check(3 * sigma + 2 * e, b, g, sigma)
                    assert c.consistent and c.degV_positive == (sigma > 0)
                    assert not kodaira_degree_check(3 * sigma + 2 * e + 1, b, g, sigma).consistent


def _random_branch(rng: random.Random) -> BranchData:
    while True:
        n = rng.randint(2, 12)
        units = [u for u in range(1, n) if math.gcd(u, n) == 1]
        ms = [rng.choice(units) for _ in range(rng.randint(2, 5))]
        last = (-sum(ms)) % n
        if last in units:
            return BranchData.from_exponents(n, ms + [last])


def test_criterion_15_hodge_sum():
    with criterion(15, "sum of h10 equals the genus on 200 random branch data with n <= 12"):
        rng = random.Random(20261018)
        for _ in range(200):
            b = _random_branch(rng)
            assert sum(eigenspace_h10(b, j) for j in range(1, b.order)) == cover_genus(b)
            assert sum(eigenspace_table(b).dims) == cover_genus(b)
