"""Acceptance criteria 1-11, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import sys
import time
from fractions import Fraction
from math import factorial

import pytest
from mpmath import binomial, mp, mpf, nsum, pi

from periodkit.audit import audit
from periodkit.errors import ParityError, PoleError
from periodkit.graph import check_rho_covariance, orbit_vertices, reduce
from periodkit.levi import double_coset_count, double_coset_reps, enumerate_levis, jmap_with_target, levi_weyl_group, lift, relative_weyl_set
from periodkit.lie import J, is_unitary
from periodkit.orbit import bruhat_cell, eigensplit, emptiness_witness, is_minimal_by_definition, minimal_classes, representative, stabilizer_profile
from periodkit.qfield import Matrix
from periodkit.spectra import AffineSubspace, SubspaceClass, distinguished_classes, split_classes, subspace_order, support_ledger
from periodkit.weyl import SignedPerm, act, all_elements, all_roots, involutions, is_positive, minimal_involutions, to_symmetric_perm
from periodkit.weyl import is_minimal_by_definition as weyl_minimal_by_definition
from periodkit.zeta import c_factor, completed_zeta_value

# pinned budgets and tolerances
WEYL_BUDGET_S = 5.0
MINIMAL_BUDGET_S = 10.0
ZETA_FE_DIGITS = 25
ORACLE_DIGITS = 20
EVAL_BUDGET_S = 1.0
AUDIT_N2_BUDGET_S = 60.0
AUDIT_N3_BUDGET_S = 900.0
RANKS = (1, 2, 3)


def _report(number: int, ok: bool, detail: str) -> None:
    line = f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {detail}"
    capman = _capture_manager()
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print(line, flush=True)
    else:
        print(line, flush=True)


_CONFIG = None


def _capture_manager():
    return _CONFIG.pluginmanager.getplugin("capturemanager") if _CONFIG is not None else None


@pytest.fixture(autouse=True, scope="module")
def _bind_config(pytestconfig):
    global _CONFIG
    _CONFIG = pytestconfig
    yield
    _CONFIG = None


# 1 -----------------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    notes, ok = [], True
    for n, expected in zip(RANKS, (2, 6, 20)):
        elems = all_elements(n)
        brute = {w for w in elems if w * w == SignedPerm.identity(n)}
        char = set(involutions(n))
        ok &= len(set(elems)) == 2 ** n * factorial(n) and brute == char and len(char) == expected
        notes.append(f"n={n}: |W|={len(elems)} |W[2]|={len(char)}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < WEYL_BUDGET_S
    return ok, "; ".join(notes) + f" ({elapsed:.2f}s < {WEYL_BUDGET_S:.0f}s)"


# 2 -----------------------------------------------------------------------------------

def criterion_2():
    start = time.perf_counter()
    ok, notes = True, []
    for n in RANKS:
        constructive = set(minimal_involutions(n))
        definitional = {w for w in involutions(n) if weyl_minimal_by_definition(w)}
        ok &= constructive == definitional
        notes.append(f"n={n}: {len(constructive)}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < MINIMAL_BUDGET_S
    return ok, "constructive == definitional; " + ", ".join(notes) + f" ({elapsed:.2f}s)"


# 3 -----------------------------------------------------------------------------------

def criterion_3():
    pairs = bad = 0
    for n in RANKS:
        for M, Mp in itertools.product(enumerate_levis(n), repeat=2):
            pairs += 1
            bad += len(double_coset_reps(M, Mp)) != double_coset_count(M, Mp)
    return bad == 0, f"{pairs} Levi pairs, {bad} mismatches"


# 4 -----------------------------------------------------------------------------------

def criterion_4():
    built = empty = bad = 0
    for n in RANKS:
        e = Matrix.identity(2 * n)
        for M in enumerate_levis(n):
            for cls in minimal_classes(M):
                try:
                    x = representative(M, cls.w).x
                except ParityError:
                    witness = emptiness_witness(M, cls)
                    empty += 1
                    bad += cls.parity_ok or not witness or any(v != "0" for v in witness.values())
                    continue
                built += 1
                ok = cls.parity_ok and x.conj_transpose() @ J(n) @ x == J(n) and x @ x.conjugate() == e
                bad += not ok
    return bad == 0, f"{built} representatives built, {empty} classes certified empty, {bad} violations"


# 5 -----------------------------------------------------------------------------------

def _double_coset(M, w):
    W_M = levi_weyl_group(M)
    return {a * w * b for a in W_M for b in W_M}


def criterion_5():
    checked = bad = 0
    for n in RANKS:
        for M in enumerate_levis(n):
            for cls in minimal_classes(M):
                if not cls.cuspidal:
                    continue
                checked += 1
                x = representative(M, cls.w).x
                bad += bruhat_cell(x) not in _double_coset(M, cls.w)
    return bad == 0 and checked > 0, f"{checked} cuspidal classes, {bad} outside their double coset"


# 6 -----------------------------------------------------------------------------------

def criterion_6():
    edges = bad = 0
    for n in RANKS:
        for v in orbit_vertices(n):
            for e in reduce(v).path:
                edges += 1
                bad += not check_rho_covariance(e)
    return bad == 0 and edges > 0, f"{edges} reduction edges, {bad} covariance failures (exact)"


# 7 -----------------------------------------------------------------------------------

def criterion_7():
    checked = bad = 0
    for n in RANKS:
        for M in enumerate_levis(n):
            for cls in minimal_classes(M):
                if not cls.parity_ok:
                    continue
                prof = stabilizer_profile(M, cls.w)
                checked += 1
                bad += prof.predicted_dim != prof.actual_dim
    M = enumerate_levis(2)[0]
    sp4 = stabilizer_profile(M, minimal_classes(M)[0].w).actual_dim
    return bad == 0 and sp4 == 10, f"{checked} classes (all cuspidal ones included), {bad} mismatches; dim at (;2) = {sp4}"


# 8 -----------------------------------------------------------------------------------

def criterion_8():
    checked = bad_sum = bad_minus = 0
    first = None
    for n in RANKS:
        for M in enumerate_levis(n):
            minimal = {c.w: c for c in minimal_classes(M)}
            for w in relative_weyl_set(M, M):
                if not w.is_involution():
                    continue
                split = eigensplit(M, w)
                checked += 1
                bad_sum += len(split.plus_basis) + len(split.minus_basis) != M.k
                cls = minimal.get(w)
                if cls is not None and len(split.minus_basis) != len(cls.R):
                    bad_minus += 1
                    if first is None:
                        first = f"{M} j={cls.j.to_json()}: dim(minus)={len(split.minus_basis)}, |R|={len(cls.R)}"
    detail = f"{checked} involution classes; plus+minus!=k: {bad_sum}; dim(minus)!=|R|: {bad_minus}"
    if first:
        detail += f" (first: {first})"
    return bad_sum == 0 and bad_minus == 0, detail


# 9 -----------------------------------------------------------------------------------

def _zeta3_apery(dps):
    with mp.workdps(dps + 10):
        return mpf(5) / 2 * nsum(lambda k: (-1) ** (k + 1) / (k ** 3 * binomial(2 * k, k)), [1, mp.inf])


def criterion_9():
    notes, ok = [], True
    slowest = 0.0
    for s in [Fraction(1, 3), Fraction(5, 2), Fraction(-3, 2), Fraction(7), Fraction(-4, 5)]:
        t0 = time.perf_counter()
        a, b = completed_zeta_value(s, ZETA_FE_DIGITS), completed_zeta_value(1 - s, ZETA_FE_DIGITS)
        slowest = max(slowest, (time.perf_counter() - t0) / 2)
        with mp.workdps(ZETA_FE_DIGITS + 20):
            ok &= abs(a.mid - b.mid) <= abs(a.mid) * mpf(10) ** -ZETA_FE_DIGITS
    notes.append(f"functional equation to {ZETA_FE_DIGITS} digits")
    w = SignedPerm(1, (1,), frozenset({1}))
    t0 = time.perf_counter()
    val = c_factor(w, [2], ORACLE_DIGITS + 5)
    slowest = max(slowest, time.perf_counter() - t0)
    with mp.workdps(ORACLE_DIGITS + 30):
        oracle = pi ** 2 / (3 * _zeta3_apery(ORACLE_DIGITS + 30))
        ok &= abs(val.mid - oracle) <= oracle * mpf(10) ** -ORACLE_DIGITS
    notes.append(f"c at pairing 2 = {val.to_json()['value'][:ORACLE_DIGITS + 2]} matches the Apery oracle")
    poles = 0
    for nu in ([1], [0], [-1]):
        try:
            c_factor(w, nu)
        except PoleError as exc:
            poles += exc.to_json()["error"] == "zeta-pole"
    ok &= poles == 3 and slowest < EVAL_BUDGET_S
    notes.append(f"{poles}/3 poles structured; slowest evaluation {slowest:.3f}s")
    return ok, "; ".join(notes)


# 10 ----------------------------------------------------------------------------------

def _independent_cuspidal_count(n):
    """Involutions normalizing a Siegel Levi, minimal in their double coset, with a sign-free
    action on the blocks through adjacent swaps of equal blocks."""
    total = 0
    for M in enumerate_levis(n):
        if M.r:
            continue
        for w in all_elements(n):
            if not w.is_involution() or w not in relative_weyl_set(M, M):
                continue
            if min(_double_coset(M, w), key=lambda u: (sum(1 for a in all_roots(n) if is_positive(a) and not is_positive(act(u, a))))) != w:
                continue
            j = jmap_with_target(M, w)[0]
            if j.c:
                continue
            moved = [a for a in range(1, M.k + 1) if j.tau[a - 1] != a]
            if all(abs(j.tau[a - 1] - a) == 1 for a in moved):
                total += 1
    return total


def criterion_10():
    n = 2
    rows = support_ledger(n)
    vanishing = sum(1 for r in rows if r.M.r and r.subspace is not None)
    emitted = sum(1 for r in rows if r.subspace is not None)
    independent = _independent_cuspidal_count(n)
    dist = distinguished_classes(n)
    M = dist[-1].M
    probe = [
        SubspaceClass(M, "pi", AffineSubspace(M, (Fraction(3), Fraction(-1)), ()), "a"),
        SubspaceClass(M, "pi", AffineSubspace(M, (Fraction(1, 2), Fraction(0)), ()), "b"),
        SubspaceClass(M, "pi", AffineSubspace(M, (Fraction(0), Fraction(0)), ((Fraction(1), Fraction(-1)),)), "c"),
        SubspaceClass(M, "pi", AffineSubspace(M, (Fraction(-1), Fraction(1)), ()), "d"),
    ]
    circ, hdist = split_classes(probe, dist)
    partition = sorted(c.tag for c in circ + hdist) == sorted(c.tag for c in probe) and not set(circ) & set(hdist)
    verified = all(any(d.weyl_orbit_tag == c.weyl_orbit_tag and subspace_order(d, c) != "not-succeq" for d in dist) for c in hdist)
    verified &= all(all(subspace_order(d, c) == "not-succeq" for d in dist if d.weyl_orbit_tag == c.weyl_orbit_tag) for c in circ)
    ok = vanishing == 0 and emitted == independent and partition and verified
    return ok, f"n=2: r>0 subspaces={vanishing}; emitted={emitted} vs independent={independent}; split circ={[c.tag for c in circ]} hdist={[c.tag for c in hdist]}"


# 11 ----------------------------------------------------------------------------------

def criterion_11():
    t0 = time.perf_counter()
    r2 = audit(2)
    t2 = time.perf_counter() - t0
    t0 = time.perf_counter()
    r3 = audit(3)
    t3 = time.perf_counter() - t0
    ok = r2["all_pass"] and r3["all_pass"] and t2 < AUDIT_N2_BUDGET_S and t3 < AUDIT_N3_BUDGET_S
    return ok, f"n=2 all_pass={r2['all_pass']} in {t2:.1f}s (< {AUDIT_N2_BUDGET_S:.0f}s); n=3 all_pass={r3['all_pass']} in {t3:.1f}s (< {AUDIT_N3_BUDGET_S:.0f}s)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("number", range(1, 12), ids=lambda k: f"criterion_{k}")
def test_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    _report(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        _report(number, ok, detail)
        failures += not ok
    sys.exit(1 if failures else 0)
