"""Exhaustive invariant sweeps, reported as a pass/fail matrix keyed by check name."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from math import factorial
from typing import Callable

from .errors import DomainError, ParityError
from .graph import check_path_covariance, orbit_vertices, reduce, vertex_rho
from .graph import check_rho_covariance as edge_covariance
from .levi import (
    LeviLabel,
    double_coset_count,
    double_coset_reps,
    enumerate_levis,
    jmap_with_target,
    lift,
    relative_weyl_set,
)
from .lie import is_unitary
from .orbit import (
    admissibility_conditions,
    bruhat_invariant,
    classify,
    eigensplit,
    emptiness_witness,
    is_minimal_by_definition,
    minimal_classes,
    representative,
    rho_x_at,
    stabilizer_profile,
)
from .qfield import Matrix
from .spectra import support_ledger
from .weyl import (
    all_elements,
    involutions,
    is_minimal_by_definition as weyl_minimal_by_definition,
    minimal_involutions,
    profile,
)

MUTATIONS = ("rep-sign-flip",)


def _result(failures: list, checked: int) -> dict:
    return {"pass": not failures, "checked": checked, "failures": failures[:5]}


def check_weyl_order(n: int, mutation=None) -> dict:
    size = len(all_elements(n))
    return _result([] if size == 2 ** n * factorial(n) else [size], 1)


def check_involutions(n: int, mutation=None) -> dict:
    brute = {w for w in all_elements(n) if w.is_involution()}
    char = set(involutions(n))
    return _result([] if brute == char else ["mismatch"], len(brute))


def check_minimal_involutions(n: int, mutation=None) -> dict:
    constructive = set(minimal_involutions(n))
    definitional = {w for w in involutions(n) if weyl_minimal_by_definition(w)}
    return _result([] if constructive == definitional else ["mismatch"], len(constructive))


def check_double_cosets(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M, Mp in itertools.product(enumerate_levis(n), repeat=2):
        count += 1
        if len(double_coset_reps(M, Mp)) != double_coset_count(M, Mp):
            fails.append(f"{M} | {Mp}")
    return _result(fails, count)


def check_jmap(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        ws = relative_weyl_set(M)
        images = set()
        for w in ws:
            j, Mp = jmap_with_target(M, w)
            images.add(j)
            for wp in relative_weyl_set(Mp):
                count += 1
                jp, _ = jmap_with_target(Mp, wp)
                if jmap_with_target(M, wp * w)[0] != jp * j:
                    fails.append(f"{M}: {w.to_json()} then {wp.to_json()}")
        if len(images) != len(ws):
            fails.append(f"{M}: not injective")
    return _result(fails, count)


def check_admissibility(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        for w in double_coset_reps(M, M):
            count += 1
            conds = admissibility_conditions(M, w)
            if len(set(conds.values())) != 1:
                fails.append(f"{M}: {w.to_json()} {conds}")
    return _result(fails, count)


def check_parity(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        for cls in minimal_classes(M):
            count += 1
            try:
                x = representative(M, cls.w)
                built = is_unitary(x.x) and x.x @ x.x.conjugate() == Matrix.identity(2 * n)
            except ParityError:
                built = False
                if not emptiness_witness(M, cls) or any(v != "0" for v in emptiness_witness(M, cls).values()):
                    fails.append(f"{M}: {cls.j.to_json()} lacks a witness")
            if built != cls.parity_ok:
                fails.append(f"{M}: {cls.j.to_json()}")
    return _result(fails, count)


def check_round_trip(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        for cls in minimal_classes(M):
            if cls.parity_ok:
                count += 1
                if bruhat_invariant(M, representative(M, cls.w)) != cls.w:
                    fails.append(f"{M}: {cls.j.to_json()}")
    return _result(fails, count)


def check_minimal_definition(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        listed = {c.w for c in minimal_classes(M)}
        for w in relative_weyl_set(M, M):
            if not w.is_involution():
                continue
            count += 1
            if is_minimal_by_definition(M, w) != (w in listed):
                fails.append(f"{M}: {w.to_json()}")
    return _result(fails, count)


def check_stabilizers(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for M in enumerate_levis(n):
        for cls in minimal_classes(M):
            if cls.parity_ok:
                count += 1
                st = stabilizer_profile(M, cls.w)
                if st.predicted_dim != st.actual_dim:
                    fails.append(f"{M}: {cls.j.to_json()} {st.predicted_dim} vs {st.actual_dim}")
    return _result(fails, count)


def check_eigensplit(n: int, mutation=None) -> dict:
    """plus + minus = k, and dim(minus) counts swapped pairs plus flipped blocks."""
    fails, count = [], 0
    for M in enumerate_levis(n):
        for w in relative_weyl_set(M, M):
            if not w.is_involution():
                continue
            count += 1
            split = eigensplit(M, w)
            j = jmap_with_target(M, w)[0]
            prof = profile(j)
            if len(split.plus_basis) + len(split.minus_basis) != M.k:
                fails.append(f"{M}: {w.to_json()} dimension")
            if len(split.minus_basis) != len(prof.c_less) + len(prof.c_plus):
                fails.append(f"{M}: {w.to_json()} minus")
    return _result(fails, count)


def _reference_rho(M: LeviLabel, w, mutation) -> tuple:
    x = representative(M, w).x
    if mutation == "rep-sign-flip":
        size = x.rows
        flip = Matrix.diag([-1] + [1] * (size - 1))
        x = flip @ x @ flip
    return rho_x_at(M, x, classify(M, w).j).coords


def check_rho_covariance(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for v in orbit_vertices(n):
        red = reduce(v)
        for e in red.path:
            count += 1
            if not edge_covariance(e):
                fails.append(f"edge {e.index} from {v.M}")
        count += 1
        if not check_path_covariance(v, red):
            fails.append(f"path from {v.M} {v.j.to_json()}")
        term = red.terminal
        count += 1
        if vertex_rho(term) != _reference_rho(term.M, lift(term.M, term.j), mutation):
            fails.append(f"terminal {term.M} {term.j.to_json()} disagrees with x_w")
    return _result(fails, count)


def check_reduction(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for v in orbit_vertices(n):
        count += 1
        red = reduce(v)
        term = red.terminal
        cls = classify(term.M, lift(term.M, term.j))
        if not cls.minimal or len(red.path) > n * n:
            fails.append(f"{v.M} {v.j.to_json()}")
    return _result(fails, count)


def check_ledger(n: int, mutation=None) -> dict:
    fails, count = [], 0
    for row in support_ledger(n):
        count += 1
        if row.M.r and row.subspace is not None:
            fails.append(f"{row.M} has r > 0 but carries a subspace")
        if row.cls is not None and not row.cls.parity_ok and row.subspace is not None:
            fails.append(f"{row.M} parity failure carries a subspace")
        if row.subspace is not None and row.subspace.dim != len(row.cls.R):
            fails.append(f"{row.M} direction dimension")
    return _result(fails, count)


CHECKS: dict[str, Callable[..., dict]] = {
    "weyl.order": check_weyl_order,
    "weyl.involutions": check_involutions,
    "weyl.minimal-involutions": check_minimal_involutions,
    "levi.double-cosets": check_double_cosets,
    "levi.jmap": check_jmap,
    "orbit.admissibility": check_admissibility,
    "orbit.minimal-definition": check_minimal_definition,
    "orbit.parity": check_parity,
    "orbit.round-trip": check_round_trip,
    "orbit.stabilizer": check_stabilizers,
    "orbit.eigensplit": check_eigensplit,
    "graph.reduction": check_reduction,
    "graph.rho-covariance": check_rho_covariance,
    "spectra.ledger": check_ledger,
}


def _run_one(args) -> tuple[str, dict]:
    name, n, mutation = args
    try:
        return name, CHECKS[name](n, mutation)
    except DomainError as exc:
        return name, {"pass": False, "checked": 0, "failures": [f"{exc.code}: {exc}"]}


def audit(n: int, jobs: int = 1, mutation: str | None = None, only: list[str] | None = None) -> dict:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    names = sorted(only or CHECKS)
    tasks = [(name, n, mutation) for name in names]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_run_one, tasks))
    else:
        results = dict(map(_run_one, tasks))
    checks = {name: results[name] for name in names}
    return {"n": n, "mutation": mutation, "checks": checks, "all_pass": all(c["pass"] for c in checks.values())}
