"""Points of X = {x in U_{2n} : x conj(x) = 1}, their Bruhat invariants and orbit data."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import (
    DimensionError,
    NotInSymmetricSpaceError,
    NotInvolutionError,
    NotInWeylSetError,
    NotUnitaryError,
    ParityError,
)
from .levi import (
    AMStar,
    LeviLabel,
    jmap_with_target,
    levi_simple_roots,
    lift,
    project,
    rho,
    simple_root_indices,
)
from .lie import (
    J,
    antidiag,
    iota,
    is_unitary,
    levi_coords,
    twisted_fixed_space,
    unipotent_coords,
    weight_classes,
)
from .qfield import DEFAULT_DISC, Matrix, nullspace, rational_rank
from .weyl import (
    SignedPerm,
    act,
    all_roots,
    from_symmetric_perm,
    is_positive,
    length,
    minimal_involutions,
    neg,
    profile,
    simple_reflection,
)


@dataclass(frozen=True)
class OrbitPoint:
    x: Matrix
    n: int
    pattern: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.x.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(f"expected a {2 * self.n}x{2 * self.n} matrix, got {self.x.shape}")
        if not is_unitary(self.x):
            raise NotUnitaryError("matrix is not in U_{2n}")
        if self.x @ self.x.conjugate() != Matrix.identity(2 * self.n, self.x.disc):
            raise NotInSymmetricSpaceError("x conj(x) is not the identity")

    @classmethod
    def base(cls, n: int, disc: int = DEFAULT_DISC) -> OrbitPoint:
        return cls(Matrix.identity(2 * n, disc), n)


def unitary_conj_inverse(g: Matrix) -> Matrix:
    """``conj(g)^{-1}`` for unitary g, computed as ``J^{-1} g^T J``."""
    j = J(g.rows // 2, g.disc)
    return (-j) @ g.transpose() @ j


def twisted_conjugate(g: Matrix, x: OrbitPoint) -> OrbitPoint:
    if not is_unitary(g):
        raise NotUnitaryError("twisting element is not in U_{2n}")
    if g.rows != 2 * x.n:
        raise DimensionError("size mismatch between g and x")
    return OrbitPoint(g @ x.x @ unitary_conj_inverse(g), x.n)


# Bruhat invariant --------------------------------------------------------------

def bruhat_cell(x: Matrix) -> SignedPerm:
    """Weyl element w with x in BwB, read from lower-left rank numbers."""
    size = x.rows
    prof = x.rank_profile()
    sigma = []
    for j in range(1, size + 1):
        row = max(i for i in range(1, size + 1) if prof[i - 1][j] - prof[i - 1][j - 1] == 1)
        sigma.append(row)
    return from_symmetric_perm(sigma)


def minimal_double_coset_rep(M: LeviLabel, Mp: LeviLabel, w: SignedPerm) -> SignedPerm:
    """Descend to the shortest element of W^{M'} w W^M."""
    left = [simple_reflection(M.n, i) for i in simple_root_indices(Mp)]
    right = [simple_reflection(M.n, i) for i in simple_root_indices(M)]
    ell = length(w)
    moved = True
    while moved:
        moved = False
        for cand in [s * w for s in left] + [w * s for s in right]:
            lc = length(cand)
            if lc < ell:
                w, ell, moved = cand, lc, True
                break
    return w


def bruhat_invariant(M: LeviLabel, x: OrbitPoint | Matrix) -> SignedPerm:
    mat = x.x if isinstance(x, OrbitPoint) else x
    return minimal_double_coset_rep(M, M, bruhat_cell(mat))


# admissibility -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _root_sets(M: LeviLabel):
    n = M.n
    roots = all_roots(n)
    levi = set()
    for a in roots:
        # a root of M lives inside one GL block or inside the central block
        support = {M.block_of(i + 1) for i, v in enumerate(a) if v}
        if len(support) == 1:
            blk = support.pop()
            if blk == 0 or sum(a) == 0:
                levi.add(a)
    pos = {a for a in roots if is_positive(a)}
    unip = pos - levi
    return frozenset(levi), frozenset(levi | unip), frozenset(unip)


def _image(w: SignedPerm, roots) -> set:
    return {act(w, a) for a in roots}


def admissibility_conditions(M: LeviLabel, w: SignedPerm) -> dict[str, bool]:
    """The Weyl-checkable admissibility conditions, keyed 3..6."""
    sig_m, sig_p, sig_u = _root_sets(M)
    winv = w.inverse()
    return {
        "3": _image(winv, sig_m) <= sig_p,
        "4": sig_m <= _image(w, sig_m),
        "5": not (sig_m & _image(w, sig_u)),
        "6": _image(w, sig_m) == sig_m,
    }


def is_double_coset_rep(M: LeviLabel, w: SignedPerm) -> bool:
    dm = levi_simple_roots(M)
    winv = w.inverse()
    return all(is_positive(act(w, a)) for a in dm) and all(is_positive(act(winv, a)) for a in dm)


def is_admissible(M: LeviLabel, w: SignedPerm) -> bool:
    if w.n != M.n:
        raise DimensionError(f"W_{w.n} element for a rank {M.n} Levi")
    if not is_double_coset_rep(M, w):
        raise NotInWeylSetError(f"{w!r} is not a minimal double coset representative for {M}")
    return admissibility_conditions(M, w)["6"]


# classification -------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitClass:
    M: LeviLabel
    w: SignedPerm
    j: SignedPerm
    admissible: bool
    minimal: bool
    cuspidal: bool
    parity_ok: bool
    S: frozenset[int]
    R: frozenset[int]
    ell: int | None
    Lx: LeviLabel | None

    def to_json(self) -> dict:
        return {
            "M": self.M.to_json(),
            "w": self.w.to_json(),
            "j": self.j.to_json(),
            "admissible": self.admissible,
            "minimal": self.minimal,
            "cuspidal": self.cuspidal,
            "parity_ok": self.parity_ok,
            "S": sorted(self.S),
            "R": sorted(self.R),
            "ell": self.ell,
            "L_x": self.Lx.to_json() if self.Lx else None,
        }


@lru_cache(maxsize=None)
def _minimal_set(k: int) -> frozenset[SignedPerm]:
    return frozenset(minimal_involutions(k))


def block_class(M: LeviLabel, w: SignedPerm) -> SignedPerm:
    """``j_M(w)`` for ``w`` in ``W(M, M)``."""
    j, tgt = jmap_with_target(M, w)
    if tgt != M:
        raise NotInWeylSetError(f"{w!r} carries {M} to {tgt}, not into W(M, M)")
    return j


def enveloping_label(M: LeviLabel, j: SignedPerm) -> LeviLabel:
    """L(x) for an M-minimal class with block data j."""
    ell = j.n - len(j.c)
    prof = profile(j)
    parts = []
    for a in range(1, ell + 1):
        if a in prof.c_minus:
            parts.append(M.parts[a - 1])
        elif a in prof.c_less:
            parts.append(2 * M.parts[a - 1])
    return LeviLabel(tuple(parts), sum(M.parts[ell:]) + M.r)


def classify(M: LeviLabel, w: SignedPerm) -> OrbitClass:
    j = block_class(M, w)
    admissible = is_admissible(M, w)
    if j not in _minimal_set(M.k):
        return OrbitClass(M, w, j, admissible, False, False, False, frozenset(), frozenset(), None, None)
    ell = M.k - len(j.c)
    prof = profile(j)
    parity_ok = all(M.parts[a - 1] % 2 == 0 for a in range(ell + 1, M.k + 1))
    cuspidal = ell == M.k and M.r == 0
    return OrbitClass(M, w, j, admissible, True, cuspidal, parity_ok, prof.c_minus, prof.c_less, ell, enveloping_label(M, j))


def minimal_classes(M: LeviLabel) -> list[OrbitClass]:
    """Every M-minimal class, ordered by the block data."""
    out = []
    for j in minimal_involutions(M.k):
        if all(M.parts[j.tau[a - 1] - 1] == M.parts[a - 1] for a in range(1, M.k + 1)):
            out.append(classify(M, lift(M, j)))
    return out


def _containing_levis(M: LeviLabel) -> list[tuple[list[list[int]], list[int]]]:
    """Standard L containing M, as (GL groups of M-blocks, M-blocks absorbed centrally)."""
    out = []
    k = M.k
    for t in range(k + 1):
        head, tail = list(range(1, t + 1)), list(range(t + 1, k + 1))
        for cuts in itertools.product([0, 1], repeat=max(t - 1, 0)):
            groups, cur = [], [1] if t else []
            for a, cut in zip(range(2, t + 1), cuts):
                if cut:
                    groups.append(cur)
                    cur = [a]
                else:
                    cur.append(a)
            if cur:
                groups.append(cur)
            out.append((groups, tail))
    return out


def is_minimal_by_definition(M: LeviLabel, w: SignedPerm) -> bool:
    """Search for L containing M with ``w = w_M^L`` and ``w`` negating Delta_M^L."""
    from .levi import relative_weyl_set

    j = block_class(M, w)
    candidates = relative_weyl_set(M, M)
    k = M.k
    for groups, tail in _containing_levis(M):
        central = set(tail)
        inside = []
        for u in candidates:
            ju = jmap_with_target(M, u)[0]
            ok = all(ju.tau[a - 1] in g and a not in ju.c for g in groups for a in g)
            ok = ok and all(ju.tau[a - 1] in central for a in central)
            if ok:
                inside.append(u)
        longest = max(inside, key=length)
        if longest != w:
            continue
        roots = []
        for g in groups:
            for a, b in zip(g, g[1:]):
                roots.append(tuple(Fraction(1 if c == a else -1 if c == b else 0) for c in range(1, k + 1)))
        if tail:
            ts = sorted(tail)
            for a, b in zip(ts, ts[1:]):
                roots.append(tuple(Fraction(1 if c == a else -1 if c == b else 0) for c in range(1, k + 1)))
            roots.append(tuple(Fraction(1 if c == k else 0) for c in range(1, k + 1)))
        if all(act(j, a) == neg(a) for a in roots):
            return True
    return False


# representatives ------------------------------------------------------------------

def _swap_block(size: int, disc: int) -> Matrix:
    half = size // 2
    return Matrix.monomial([(p + half) % size for p in range(size)], [1] * size, disc)


def _central_t(flipped: Sequence[int], m: int, signs: Sequence[int], disc: int) -> Matrix:
    """Anti-diagonal block matrix pairing each flipped block with its dual, identity on the 2m core."""
    half = sum(flipped) + m
    size = 2 * half
    images = list(range(size))
    vals = [1] * size
    start = 0
    for p, s in zip(flipped, signs):
        for t in range(p):
            row, col = start + t, size - start - p + t
            images[col], vals[col] = row, s      # top-right: s * I
            images[row], vals[row] = col, -s     # bottom-left: -s * I
        start += p
    return Matrix.monomial(images, vals, disc)


def epsilon(size: int, disc: int = DEFAULT_DISC) -> Matrix:
    half = size // 2
    return Matrix.diag([-1] * half + [1] * half, disc)


def _assemble(M: LeviLabel, cls: OrbitClass, signs: Sequence[int], disc: int) -> Matrix:
    ell, Lx = cls.ell, cls.Lx
    tblocks = []
    for a in range(1, ell + 1):
        if a in cls.S:
            tblocks.append(Matrix.identity(M.parts[a - 1], disc))
        elif a in cls.R:
            tblocks.append(_swap_block(2 * M.parts[a - 1], disc))
    flipped = list(M.parts[ell:])
    t = _central_t(flipped, M.r, signs, disc) if Lx.r else None
    t_w = iota(Lx, tblocks, t, disc)
    gs = [Matrix.identity(p, disc) if a <= ell else epsilon(p, disc) for a, p in enumerate(M.parts, start=1)]
    return t_w @ iota(M, gs, None, disc)


def representative(M: LeviLabel, w: SignedPerm, disc: int = DEFAULT_DISC) -> OrbitPoint:
    """x_w = t_w iota(I, eps, ..., eps; I_2m), with the central sign pattern solved for."""
    cls = classify(M, w)
    if not cls.minimal:
        raise NotInWeylSetError(f"{w!r} is not an M-minimal involution for {M}")
    if not cls.parity_ok:
        raise ParityError(f"an odd block among the flipped blocks of {M} leaves wM and X disjoint")
    nflip = M.k - cls.ell
    for signs in itertools.product([1, -1], repeat=nflip):
        x = _assemble(M, cls, signs, disc)
        if not is_unitary(x) or x @ x.conjugate() != Matrix.identity(2 * M.n, disc):
            continue
        if bruhat_invariant(M, x) != w:
            continue
        return OrbitPoint(x, M.n, tuple(signs))
    raise NotInSymmetricSpaceError(f"no sign pattern places x_w in X for {M}, {w!r}")


@lru_cache(maxsize=None)
def parity_witness(size: int) -> str:
    """Determinant of a generic alternating matrix of the given size, as a string."""
    import sympy

    a = sympy.Matrix(size, size, lambda i, j: sympy.Symbol(f"a{min(i, j)}_{max(i, j)}") * (1 if i < j else -1) if i != j else 0)
    return str(sympy.expand(a.det()))


def emptiness_witness(M: LeviLabel, cls: OrbitClass) -> dict[int, str]:
    """For each odd flipped block, the vanishing determinant that rules out a point of X."""
    out = {}
    for a in range(cls.ell + 1, M.k + 1):
        p = M.parts[a - 1]
        if p % 2:
            out[a] = parity_witness(p)
    return out


# eigenspaces and rho_x ----------------------------------------------------------------

def _block_matrix(j: SignedPerm) -> list[list[Fraction]]:
    k = j.n
    out = [[Fraction(0)] * k for _ in range(k)]
    for a in range(1, k + 1):
        out[j.tau[a - 1] - 1][a - 1] = Fraction(-1 if a in j.c else 1)
    return out


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    lead = next(x for x in ints if x)
    sgn = 1 if lead > 0 else -1
    return tuple(Fraction(sgn * x, g) for x in ints)


@dataclass(frozen=True)
class EigenSplit:
    label: LeviLabel
    plus_basis: tuple[tuple[Fraction, ...], ...]
    minus_basis: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "M": self.label.to_json(),
            "plus": [[str(x) for x in v] for v in self.plus_basis],
            "minus": [[str(x) for x in v] for v in self.minus_basis],
        }


def eigensplit_j(M: LeviLabel, j: SignedPerm) -> EigenSplit:
    if not j.is_involution():
        raise NotInvolutionError(f"block data {j!r} is not an involution")
    a = _block_matrix(j)
    k = j.n
    bases = []
    for sign in (1, -1):
        rows = [[a[r][c] - (sign if r == c else 0) for c in range(k)] for r in range(k)]
        bases.append(tuple(_primitive(v) for v in nullspace(rows, k)))
    return EigenSplit(M, bases[0], bases[1])


def eigensplit(M: LeviLabel, w: SignedPerm) -> EigenSplit:
    j = block_class(M, w)
    if not w.is_involution():
        raise NotInvolutionError(f"{w!r} is not an involution")
    return eigensplit_j(M, j)


def plus_projector(j: SignedPerm):
    a = _block_matrix(j)
    k = j.n

    def fold(lam: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple((Fraction(lam[r]) + sum(a[r][c] * lam[c] for c in range(k))) / 2 for r in range(k))

    return fold


def rho_x_at(M: LeviLabel, x: Matrix, j: SignedPerm) -> AMStar:
    """rho_x for a vertex (M, x) whose x acts on A_M^* by the block data j.

    Lie(U_x) is the twisted fixed space inside Lie(U_P); its weights are grouped
    by their restriction to the +1 eigenspace, and rho_x is the resulting
    modulus weight minus the +1 part of rho_P.
    """
    coords = unipotent_coords(M)
    basis = twisted_fixed_space(x, coords)
    fold = plus_projector(j)
    mu = [Fraction(0)] * M.k
    for key, idxs in weight_classes(M, coords, fold).items():
        dim = rational_rank([[v[t] for t in idxs] for v in basis], len(idxs)) if basis else 0
        for i in range(M.k):
            mu[i] += dim * key[i]
    shift = fold(project(M, rho(M)))
    return AMStar(M, tuple(m - s for m, s in zip(mu, shift)))


def rho_x(M: LeviLabel, w: SignedPerm, disc: int = DEFAULT_DISC) -> AMStar:
    x = representative(M, w, disc)
    return rho_x_at(M, x.x, block_class(M, w))


# stabilizers --------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerProfile:
    factors: tuple[tuple[str, int], ...]
    predicted_dim: int
    actual_dim: int

    def to_json(self) -> dict:
        return {
            "factors": [{"group": g, "dim_F": d} for g, d in self.factors],
            "predicted_dim": self.predicted_dim,
            "actual_dim": self.actual_dim,
            "match": self.predicted_dim == self.actual_dim,
        }


def stabilizer_profile(M: LeviLabel, w: SignedPerm, disc: int = DEFAULT_DISC) -> StabilizerProfile:
    cls = classify(M, w)
    x = representative(M, w, disc)
    factors = []
    for a in range(1, cls.ell + 1):
        p = M.parts[a - 1]
        if a in cls.S:
            factors.append((f"GL_{p}", p * p))
        elif a in cls.R:
            factors.append((f"Res_E/F GL_{p}", 2 * p * p))
    for a in range(cls.ell + 1, M.k + 1):
        p = M.parts[a - 1]
        factors.append((f"Res_E/F Sp_{p}", p * (p + 1)))
    if M.r:
        factors.append((f"Sp_{2 * M.r}", M.r * (2 * M.r + 1)))
    actual = len(twisted_fixed_space(x.x, levi_coords(M)))
    return StabilizerProfile(tuple(factors), sum(d for _, d in factors), actual)


__all__ = [
    "OrbitPoint",
    "OrbitClass",
    "EigenSplit",
    "StabilizerProfile",
    "twisted_conjugate",
    "bruhat_cell",
    "bruhat_invariant",
    "minimal_double_coset_rep",
    "admissibility_conditions",
    "is_admissible",
    "classify",
    "minimal_classes",
    "is_minimal_by_definition",
    "representative",
    "emptiness_witness",
    "eigensplit",
    "rho_x",
    "rho_x_at",
    "stabilizer_profile",
    "J",
    "antidiag",
]
