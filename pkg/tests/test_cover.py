from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclohodge.cover import (
    BranchData,
    BranchPoint,
    cover_genus,
    eigenspace_h10,
    eigenspace_table,
    eigensheaf_degree,
    hurwitz_base_genus,
    local_exponents,
    validate,
)
from cyclohodge.errors import (
    DisconnectedCover,
    DuplicateLabel,
    FewerThanThreePoints,
    InvalidCharacter,
    NonIntegralGenus,
    SumNotZeroModN,
    TrivialLocalMonodromy,
)

from conftest import genus_six_cover


def bd(n, ms):
    return BranchData.from_exponents(n, ms)


# -- validation -------------------------------------------------------------


def test_validate_accepts_both_curves():
    assert validate(bd(7, [1, 1, 1, 4])).exponents == (1, 1, 1, 4)
    assert validate(bd(7, [1, 4, 1, 1])).exponents == (1, 4, 1, 1)


def test_validate_rejects_bad_sum():
    with pytest.raises(SumNotZeroModN):
        validate(bd(7, [1, 1, 1, 1]))


def test_validate_reduces_and_drops_zero_exponents():
    b = validate(bd(5, [6, 7, 12, 5]))
    assert b.exponents == (1, 2, 2)
    assert b.labels == ("s0", "s1", "s2")


def test_validate_other_errors():
    with pytest.raises(FewerThanThreePoints):
        validate(bd(5, [1, 4]))
    with pytest.raises(DuplicateLabel):
        validate(BranchData(3, (BranchPoint("a", 1), BranchPoint("a", 1), BranchPoint("b", 1))))
    with pytest.raises(DisconnectedCover):
        validate(bd(6, [2, 2, 2]))


# -- genus --------------------------------------------------------------------


@pytest.mark.parametrize(
    "n, ms, g",
    [(7, [1, 1, 1, 4], 6), (2, [1, 1], 0), (7, [1, 4, 1, 1], 6), (2, [1, 1, 1, 1], 1), (3, [1, 1, 1], 1)],
)
def test_cover_genus_examples(n, ms, g):
    assert cover_genus(bd(n, ms)) == g


def _euler_characteristic_genus(n, ms):
    # n sheets over the sphere, with gcd(n, m) points above a branch value
    r = len(ms)
    chi = n * (2 - r) + sum(math.gcd(n, m) for m in ms)
    assert chi % 2 == 0
    return 1 - chi // 2


def _all_branch_data(max_n=6, max_points=5):
    for n in range(2, max_n + 1):
        for r in range(3, max_points + 1):
            def rec(prefix):
                if len(prefix) == r - 1:
                    last = (-sum(prefix)) % n
                    if last:
                        yield prefix + [last]
                    return
                for m in range(1, n):
                    yield from rec(prefix + [m])
            for ms in rec([]):
                if math.gcd(n, *ms) == 1:
                    yield n, ms


def test_genus_against_euler_characteristic_count():
    count = 0
    for n, ms in _all_branch_data():
        assert cover_genus(bd(n, ms)) == _euler_characteristic_genus(n, ms)
        count += 1
    assert count > 500


@given(st.permutations([1, 2, 3, 3, 5]), st.sampled_from([1, 2, 3, 4, 5, 6]))
def test_genus_invariant_under_relabeling_and_units(ms, u):
    base = cover_genus(bd(7, [1, 2, 3, 3, 5]))
    assert cover_genus(bd(7, [(u * m) % 7 for m in ms])) == base


# -- eigenspaces ------------------------------------------------------------


def test_eigenspace_dimensions():
    b = genus_six_cover()
    assert [eigenspace_h10(b, j) for j in (1, 3, 5)] == [2, 1, 0]
    assert eigenspace_table(b).dims == (2, 2, 1, 1, 0, 0)


def test_eigensheaf_degrees():
    b = genus_six_cover()
    assert [eigensheaf_degree(b, j) for j in (2, 4, 6)] == [1, 2, 3]
    assert eigenspace_table(b).degrees == (1, 1, 2, 2, 3, 3)


def test_local_exponents_match_tau_basis():
    # the j=1 form y^(-6/7) (y-1)^(-6/7) (y-x)^(-3/7) dy
    mus = [mu.value for mu in local_exponents(genus_six_cover(), 1)]
    assert mus == [Fraction(6, 7)] * 3 + [Fraction(3, 7)]


def test_table_flags():
    t = eigenspace_table(genus_six_cover())
    r1, r3 = t.row(1), t.row(3)
    assert (r1.h10, r1.h01, r1.unitary_flat, r1.rank) == (2, 0, True, 2)
    assert (r3.h10, r3.h01, r3.unitary_flat, r3.rank) == (1, 1, False, 2)
    legendre = eigenspace_table(bd(2, [1, 1, 1, 1])).row(1)
    assert (legendre.h10, legendre.h01) == (1, 1)


def test_trivial_local_monodromy_is_rejected():
    b = validate(bd(6, [1, 2, 3]))
    with pytest.raises(TrivialLocalMonodromy):
        eigenspace_h10(b, 2)
    with pytest.raises(TrivialLocalMonodromy):
        eigenspace_table(b)


def test_character_range():
    with pytest.raises(InvalidCharacter):
        eigenspace_h10(genus_six_cover(), 7)
    with pytest.raises(InvalidCharacter):
        eigensheaf_degree(genus_six_cover(), 0)


def test_h10_equals_degree_of_dual_minus_one():
    b = genus_six_cover()
    for j in range(1, 7):
        assert eigenspace_h10(b, j) == eigensheaf_degree(b, 7 - j) - 1


@st.composite
def unit_branch_data(draw):
    """Branch data where every exponent is a unit mod n (all characters usable)."""
    n = draw(st.integers(2, 12))
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    r = draw(st.integers(3, 7))
    ms = draw(st.lists(st.sampled_from(units), min_size=r - 1, max_size=r - 1))
    last = (-sum(ms)) % n
    ms.append(last)
    if math.gcd(last, n) != 1:
        # repair with a second point so the sum stays zero
        ms[-1] = 1
        ms.append((-sum(ms)) % n)
    from hypothesis import assume

    assume(all(math.gcd(m, n) == 1 for m in ms))
    return bd(n, ms)


@settings(max_examples=200, deadline=None)
@given(unit_branch_data())
def test_hodge_numbers_add_up_to_genus(b):
    t = eigenspace_table(b)
    r = len(b)
    assert sum(t.dims) == cover_genus(b)
    for row in t:
        assert row.h10 + row.h01 == r - 2
        assert row.eigensheaf_degree + t.row(b.order - row.j).eigensheaf_degree == r
        assert row.unitary_flat == (row.h10 == 0 or row.h01 == 0)


# -- Hurwitz ------------------------------------------------------------------


@pytest.mark.parametrize("n, g, ram, expected", [(7, 0, [7, 7, 7], 3), (1, 5, [], 5), (2, 0, [2, 2, 2, 2], 1)])
def test_hurwitz_examples(n, g, ram, expected):
    assert hurwitz_base_genus(n, g, ram) == expected


def test_hurwitz_rejects_impossible_data():
    with pytest.raises(NonIntegralGenus):
        hurwitz_base_genus(2, 0, [2])
    with pytest.raises(NonIntegralGenus):
        hurwitz_base_genus(6, 0, [4])
