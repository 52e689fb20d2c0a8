import itertools
from fractions import Fraction
from math import factorial

import pytest

from periodkit.errors import DimensionError, NotInWeylSetError
from periodkit.levi import (
    AMStar,
    LeviLabel,
    conjugacy_class,
    double_coset_count,
    double_coset_reps,
    embed,
    enumerate_levis,
    jmap,
    jmap_with_target,
    levi_weyl_group,
    lift,
    project,
    relative_coroot,
    relative_positive_roots,
    relative_simple_roots,
    relative_weyl_set,
    rho,
)
from periodkit.weyl import SignedPerm, act, all_elements, is_positive, simple_roots


def _rho_oracle(M):
    """rho_0 - rho_0^M from the closed form 2(m - t) + 1 on unitary blocks and m + 1 - 2t on GL blocks."""
    n = M.n
    full = [Fraction(2 * (n - t) + 1) for t in range(1, n + 1)]
    inner = []
    for m in M.parts:
        inner += [Fraction(m + 1 - 2 * t) for t in range(1, m + 1)]
    inner += [Fraction(2 * (M.r - t) + 1) for t in range(1, M.r + 1)]
    return tuple(a - b for a, b in zip(full, inner))


def test_label_parsing():
    assert LeviLabel.parse("1,1;0") == LeviLabel((1, 1), 0)
    assert LeviLabel.parse(";2") == LeviLabel((), 2)
    assert LeviLabel.parse('{"parts": [2], "r": 1}') == LeviLabel((2,), 1)
    assert str(LeviLabel((2, 1), 0)) == "2,1;0"
    for bad in ["1,1", "a;0", ";0"]:
        with pytest.raises(ValueError):
            LeviLabel.parse(bad)


@pytest.mark.parametrize("n,count", [(1, 2), (2, 4), (3, 8), (4, 16)])
def test_levi_counts(n, count):
    levis = enumerate_levis(n)
    assert len(levis) == len(set(levis)) == count
    assert all(M.n == n for M in levis)


@pytest.mark.parametrize("n", [2, 3])
def test_levi_weyl_group_order(n):
    for M in enumerate_levis(n):
        expected = 2 ** M.r * factorial(M.r)
        for m in M.parts:
            expected *= factorial(m)
        assert len(levi_weyl_group(M)) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_coset_reps_match_brute_force(n):
    for M, Mp in itertools.product(enumerate_levis(n), repeat=2):
        assert len(double_coset_reps(M, Mp)) == double_coset_count(M, Mp)


def test_double_coset_known_values():
    borel = LeviLabel((1, 1), 0)
    assert len(double_coset_reps(borel, borel)) == 8
    siegel = LeviLabel((2,), 0)
    assert len(double_coset_reps(siegel, siegel)) == 3
    with pytest.raises(DimensionError):
        double_coset_reps(siegel, LeviLabel((1,), 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jmap_inverts_lift_and_is_multiplicative(n):
    for M in enumerate_levis(n):
        for j in all_elements(M.k):
            w = lift(M, j)
            jj, _ = jmap_with_target(M, w)
            assert jj == j
            assert all(is_positive(act(w, a)) for a in _within_blocks(M))
        for w in relative_weyl_set(M):
            j, Mp = jmap_with_target(M, w)
            for wp in relative_weyl_set(Mp):
                assert jmap(M, wp * w) == jmap(Mp, wp) * j


def _within_blocks(M):
    from periodkit.levi import levi_simple_roots

    return levi_simple_roots(M)


def test_jmap_rejects_elements_outside():
    M = LeviLabel((2,), 0)
    with pytest.raises(NotInWeylSetError):
        jmap(M, SignedPerm(2, (1, 2), frozenset({1})))
    with pytest.raises(NotInWeylSetError):
        jmap(LeviLabel((1,), 1), SignedPerm(2, (2, 1), frozenset()))


def test_flip_reverses_block():
    M = LeviLabel((2, 1), 0)
    w = lift(M, SignedPerm(2, (2, 1), frozenset({1})))
    assert w.images() == (-3, -2, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rho_matches_closed_form(n):
    for M in enumerate_levis(n):
        assert rho(M) == _rho_oracle(M)


def test_rho_examples():
    assert rho(LeviLabel((1, 1), 0)) == (3, 1)
    assert rho(LeviLabel((2,), 0)) == (2, 2)
    assert rho(LeviLabel((1,), 1)) == (3, 0)
    assert project(LeviLabel((2,), 0), rho(LeviLabel((2,), 0))) == (2,)


def test_embed_project_and_amstar():
    M = LeviLabel((2, 1), 1)
    v = (Fraction(1, 2), Fraction(-3))
    assert embed(M, v) == (Fraction(1, 2), Fraction(1, 2), -3, 0)
    assert project(M, embed(M, v)) == v
    with pytest.raises(DimensionError):
        AMStar(M, (1,))


def test_relative_roots():
    siegel = LeviLabel((1, 1), 0)
    assert relative_simple_roots(siegel) == [(1, -1), (0, 2)]
    assert relative_simple_roots(LeviLabel((1, 1), 1))[-1] == (0, 1)
    assert len(relative_positive_roots(LeviLabel((1, 1, 1), 0))) == 9
    assert relative_coroot((Fraction(0), Fraction(2))) == (0, 1)
    assert relative_coroot((Fraction(1), Fraction(1))) == (1, 1)


def test_conjugacy_class():
    assert conjugacy_class(LeviLabel((2, 1), 0)) == [LeviLabel((1, 2), 0), LeviLabel((2, 1), 0)]


def test_simple_roots_sanity():
    assert simple_roots(2)[-1] == (0, 2)
