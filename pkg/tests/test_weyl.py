import itertools
from collections import deque
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodkit.errors import NotInvolutionError
from periodkit.weyl import (
    SignedPerm,
    act,
    all_elements,
    all_roots,
    from_symmetric_perm,
    involutions,
    is_minimal_by_definition,
    is_positive,
    length,
    longest_element,
    minimal_involutions,
    positive_roots,
    profile,
    root_reflection,
    simple_reflection,
    simple_roots,
    to_symmetric_perm,
)


@st.composite
def signed_perms(draw, n=None):
    n = draw(st.integers(1, 4)) if n is None else n
    tau = draw(st.permutations(list(range(1, n + 1))))
    c = draw(st.sets(st.integers(1, n)))
    return SignedPerm(n, tuple(tau), frozenset(c))


def _symmetric_group_brute(n):
    """Permutations of 1..2n commuting with p -> 2n+1-p, straight from the definition."""
    m = 2 * n
    return [s for s in itertools.permutations(range(1, m + 1)) if all(s[m - p] == m + 1 - s[p - 1] for p in range(1, m + 1))]


def _word_lengths(n):
    gens = [simple_reflection(n, i) for i in range(1, n + 1)]
    start = SignedPerm.identity(n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = w * s
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


@pytest.mark.parametrize("n", [1, 2, 3])
def test_group_order_matches_centralizer_in_symmetric_group(n):
    elems = all_elements(n)
    assert len(set(elems)) == 2 ** n * factorial(n)
    brute = _symmetric_group_brute(n)
    assert sorted(brute) == sorted(to_symmetric_perm(w) for w in elems)


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 6), (3, 20)])
def test_involution_counts(n, expected):
    brute = [s for s in _symmetric_group_brute(n) if all(s[s[p] - 1] == p + 1 for p in range(2 * n))]
    assert len(brute) == expected
    assert sorted(to_symmetric_perm(w) for w in involutions(n)) == sorted(brute)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_length_is_word_length(n):
    for w, d in _word_lengths(n).items():
        assert length(w) == d


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_longest_element_is_minus_identity(n):
    w0 = longest_element(n)
    assert w0 == SignedPerm.sign_block(n, range(1, n + 1))
    assert length(w0) == n * n == len(positive_roots(n))


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 4), (3, 7), (4, 12)])
def test_minimal_involutions_constructive_equals_definition(n, expected):
    constructive = set(minimal_involutions(n))
    assert len(constructive) == expected
    assert constructive == {w for w in involutions(n) if is_minimal_by_definition(w)}


def test_minimal_involutions_n2_listing():
    got = [w.to_json() for w in minimal_involutions(2)]
    assert got == [
        {"n": 2, "tau": [1, 2], "c": []},
        {"n": 2, "tau": [2, 1], "c": []},
        {"n": 2, "tau": [1, 2], "c": [2]},
        {"n": 2, "tau": [1, 2], "c": [1, 2]},
    ]


@given(signed_perms(), signed_perms())
def test_action_is_a_homomorphism(a, b):
    if a.n != b.n:
        b = SignedPerm.identity(a.n)
    for v in all_roots(a.n):
        assert act(a * b, v) == act(a, act(b, v))
    assert (a * a.inverse()).is_identity()
    assert from_symmetric_perm(to_symmetric_perm(a)) == a


@given(signed_perms())
def test_action_permutes_roots(w):
    roots = set(all_roots(w.n))
    assert {act(w, v) for v in roots} == roots


@pytest.mark.parametrize("n", [2, 3])
def test_root_reflections(n):
    for alpha in positive_roots(n):
        s = root_reflection(alpha)
        assert s.is_involution()
        assert act(s, alpha) == tuple(-x for x in alpha)
    assert len(simple_roots(n)) == n
    assert all(is_positive(a) for a in simple_roots(n))


def test_profile_sets():
    w = SignedPerm(4, (2, 1, 3, 4), frozenset({1, 2, 4}))
    p = profile(w)
    assert p.c_plus == {4} and p.c_minus == {3}
    assert p.c_neq == {1, 2} and p.c_less == {1}
    with pytest.raises(NotInvolutionError):
        profile(SignedPerm(3, (2, 3, 1), frozenset()))


def test_json_round_trip_and_validation():
    w = SignedPerm(3, (3, 1, 2), frozenset({2}))
    assert SignedPerm.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        SignedPerm(2, (1, 1), frozenset())
    assert act(w, (Fraction(1), Fraction(0), Fraction(0))) == (0, 0, 1)
