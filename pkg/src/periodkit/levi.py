"""Standard Levi subgroups of U_{2n} and their relative Weyl data.

A label ``(n_1, ..., n_k; r)`` cuts 1..n into consecutive GL blocks ``B_1..B_k``
followed by a central block of size ``r``.  Elements of ``W(M, M')`` are pinned
down by block data: a signed permutation ``j`` of the k blocks, where a plus
sign carries a block order-preservingly and a minus sign sends it to the
negated, reversed target block.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionError, NotInWeylSetError
from .weyl import (
    RootVector,
    SignedPerm,
    act,
    all_elements,
    is_positive,
    simple_reflection,
    simple_roots,
)


@dataclass(frozen=True)
class LeviLabel:
    parts: tuple[int, ...]
    r: int

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts) or self.r < 0:
            raise ValueError(f"bad Levi label {parts};{self.r}")
        if not parts and self.r == 0:
            raise ValueError("empty Levi label")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "r", int(self.r))

    @property
    def n(self) -> int:
        return sum(self.parts) + self.r

    @property
    def k(self) -> int:
        return len(self.parts)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p
        return out

    def block(self, a: int) -> list[int]:
        """Coordinates (1-based) of block ``a`` (1-based)."""
        off = self.offsets()[a - 1]
        return list(range(off + 1, off + self.parts[a - 1] + 1))

    def central(self) -> list[int]:
        return list(range(self.n - self.r + 1, self.n + 1))

    def block_of(self, i: int) -> int:
        """Block index of coordinate ``i``; 0 for the central block."""
        for a, off in enumerate(self.offsets(), start=1):
            if off < i <= off + self.parts[a - 1]:
                return a
        return 0

    def is_siegel(self) -> bool:
        return self.r == 0

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "r": self.r}

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) + f";{self.r}"

    @classmethod
    def parse(cls, text: str) -> LeviLabel:
        """Accept ``"n1,n2;r"`` or the JSON object form."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        m = re.fullmatch(r"\s*([\d,\s]*);\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Levi label {text!r}")
        parts = tuple(int(p) for p in m.group(1).split(",") if p.strip())
        return cls(parts, int(m.group(2)))

    @classmethod
    def from_json(cls, data) -> LeviLabel:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data.get("parts", [])), int(data["r"]))


def _compositions(m: int) -> list[tuple[int, ...]]:
    if m == 0:
        return [()]
    out = []
    for first in range(1, m + 1):
        out += [(first,) + rest for rest in _compositions(m - first)]
    return out


@lru_cache(maxsize=None)
def _levis(n: int) -> tuple[LeviLabel, ...]:
    out = []
    for r in range(n, -1, -1):
        for parts in sorted(_compositions(n - r), key=lambda p: (len(p), p)):
            out.append(LeviLabel(parts, r))
    return tuple(out)


def enumerate_levis(n: int) -> list[LeviLabel]:
    if n < 1:
        raise ValueError("n must be positive")
    return list(_levis(n))


def simple_root_indices(M: LeviLabel) -> list[int]:
    """Indices into ``simple_roots(n)`` of the simple roots inside M."""
    idx = []
    for a in range(1, M.k + 1):
        blk = M.block(a)
        idx += blk[:-1]
    if M.r:
        idx += M.central()
    return idx


def levi_simple_roots(M: LeviLabel) -> list[RootVector]:
    simple = simple_roots(M.n)
    return [simple[i - 1] for i in simple_root_indices(M)]


@lru_cache(maxsize=None)
def levi_weyl_group(M: LeviLabel) -> frozenset[SignedPerm]:
    """W^M, generated by the simple reflections of M."""
    gens = [simple_reflection(M.n, i) for i in simple_root_indices(M)]
    seen = {SignedPerm.identity(M.n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = w * s
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(seen)


# A_M^* ------------------------------------------------------------------------

def embed(M: LeviLabel, coords: Sequence) -> RootVector:
    if len(coords) != M.k:
        raise DimensionError(f"expected {M.k} coordinates for {M}, got {len(coords)}")
    out = []
    for lam, p in zip(coords, M.parts):
        out += [Fraction(lam)] * p
    return tuple(out + [Fraction(0)] * M.r)


def project(M: LeviLabel, v: Sequence) -> RootVector:
    if len(v) != M.n:
        raise DimensionError(f"expected a vector of length {M.n}")
    return tuple(sum((Fraction(v[i - 1]) for i in M.block(a)), Fraction(0)) / M.parts[a - 1] for a in range(1, M.k + 1))


@dataclass(frozen=True)
class AMStar:
    label: LeviLabel
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.label.k:
            raise DimensionError(f"{self.label} needs {self.label.k} coordinates")
        object.__setattr__(self, "coords", coords)

    def embed(self) -> RootVector:
        return embed(self.label, self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


# relative Weyl sets -------------------------------------------------------------

def double_coset_reps(M: LeviLabel, Mp: LeviLabel) -> list[SignedPerm]:
    """Minimal representatives of W^{M'} \\ W / W^M."""
    if M.n != Mp.n:
        raise DimensionError(f"rank mismatch {M.n} vs {Mp.n}")
    dm, dmp = levi_simple_roots(M), levi_simple_roots(Mp)
    out = []
    for w in all_elements(M.n):
        if all(is_positive(act(w, a)) for a in dm):
            winv = w.inverse()
            if all(is_positive(act(winv, a)) for a in dmp):
                out.append(w)
    return out


def double_coset_count(M: LeviLabel, Mp: LeviLabel) -> int:
    """Brute-force number of W^{M'} x W^M orbits on W."""
    left, right = levi_weyl_group(Mp), levi_weyl_group(M)
    remaining = set(all_elements(M.n))
    count = 0
    while remaining:
        w = remaining.pop()
        orbit = {a * w * b for a in left for b in right}
        remaining -= orbit
        count += 1
    return count


def target_label(M: LeviLabel, j: SignedPerm) -> LeviLabel:
    if j.n != M.k:
        raise DimensionError(f"block permutation of size {j.n} for {M.k} blocks")
    parts = [0] * M.k
    for a in range(1, M.k + 1):
        parts[j.tau[a - 1] - 1] = M.parts[a - 1]
    return LeviLabel(tuple(parts), M.r)


def lift(M: LeviLabel, j: SignedPerm) -> SignedPerm:
    """The element of ``W(M, M')`` with block data ``j``."""
    Mp = target_label(M, j)
    images = [0] * M.n
    for a in range(1, M.k + 1):
        src, dst = M.block(a), Mp.block(j.tau[a - 1])
        if a in j.c:
            for i, s in enumerate(src):
                images[s - 1] = -dst[len(dst) - 1 - i]
        else:
            for s, t in zip(src, dst):
                images[s - 1] = t
    for i in M.central():
        images[i - 1] = i
    return SignedPerm.from_images(images)


def jmap_with_target(M: LeviLabel, w: SignedPerm) -> tuple[SignedPerm, LeviLabel]:
    """Read off block data by tracking where each block lands."""
    if w.n != M.n:
        raise DimensionError(f"W_{w.n} element for a rank {M.n} Levi")
    images = w.images()
    for i in M.central():
        if images[i - 1] != i:
            raise NotInWeylSetError(f"{w!r} moves the central block of {M}")
    spans = []
    for a in range(1, M.k + 1):
        blk = M.block(a)
        img = [images[i - 1] for i in blk]
        signs = {v > 0 for v in img}
        if len(signs) != 1:
            raise NotInWeylSetError(f"{w!r} splits the signs of block {a} of {M}")
        plus = signs.pop()
        tgt = [abs(v) for v in img]
        if not plus:
            tgt = tgt[::-1]
        if tgt != list(range(tgt[0], tgt[0] + len(tgt))):
            raise NotInWeylSetError(f"{w!r} does not carry block {a} of {M} onto a block")
        spans.append((tgt[0], a, plus))
    order = sorted(spans)
    tau = [0] * M.k
    parts = []
    c = set()
    for pos, (start, a, plus) in enumerate(order, start=1):
        tau[a - 1] = pos
        parts.append(M.parts[a - 1])
        if not plus:
            c.add(a)
    return SignedPerm(M.k, tuple(tau), frozenset(c)), LeviLabel(tuple(parts), M.r)


def jmap(M: LeviLabel, w: SignedPerm) -> SignedPerm:
    return jmap_with_target(M, w)[0]


def in_W(M: LeviLabel, w: SignedPerm) -> bool:
    try:
        jmap_with_target(M, w)
    except NotInWeylSetError:
        return False
    return True


def relative_weyl_set(M: LeviLabel, Mp: LeviLabel | None = None) -> list[SignedPerm]:
    """``W(M, M')`` (or all of ``W(M)`` when ``Mp`` is omitted)."""
    out = []
    for j in all_elements(M.k):
        w, tgt = lift(M, j), target_label(M, j)
        if Mp is None or tgt == Mp:
            out.append(w)
    return out


def relative_simple_roots(M: LeviLabel) -> list[RootVector]:
    """Simple roots of A_M in coordinates of A_M^* = R^k."""
    k = M.k
    out = []
    for a in range(1, k):
        out.append(tuple(Fraction(1 if b == a else -1 if b == a + 1 else 0) for b in range(1, k + 1)))
    if k:
        scale = 1 if M.r else 2
        out.append(tuple(Fraction(scale if b == k else 0) for b in range(1, k + 1)))
    return out


def relative_positive_roots(M: LeviLabel) -> list[RootVector]:
    """Positive roots of A_M in R^k: f_a +- f_b, 2 f_a, and f_a when r > 0."""
    k = M.k
    out = []
    e = lambda a, s=1: tuple(Fraction(s if b == a else 0) for b in range(1, k + 1))  # noqa: E731
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            out.append(tuple(x - y for x, y in zip(e(a), e(b))))
            out.append(tuple(x + y for x, y in zip(e(a), e(b))))
        if M.r:
            out.append(e(a))
        out.append(e(a, 2))
    return sorted(out, reverse=True)


def relative_coroot(beta: Sequence[Fraction]) -> RootVector:
    """Coroot of a restricted root, paired with A_M^* by the plain dot product.

    The long representative ``2 f_a`` and the short ``f_a`` both give ``f_a``;
    ``f_a +- f_b`` is its own coroot.
    """
    nz = [x for x in beta if x]
    if len(nz) == 1:
        return tuple(Fraction(1 if x > 0 else -1) if x else Fraction(0) for x in beta)
    return tuple(Fraction(x) for x in beta)


# rho ---------------------------------------------------------------------------

def rho(M: LeviLabel) -> RootVector:
    """Half the sum of the weights on Lie(U_P), with F-dimension multiplicity."""
    from .lie import unipotent_weight_multiplicities

    total = [Fraction(0)] * M.n
    for weight, mult in unipotent_weight_multiplicities(M).items():
        for i, x in enumerate(weight):
            total[i] += mult * x
    return tuple(t / 2 for t in total)


def rho_am(M: LeviLabel) -> AMStar:
    return AMStar(M, project(M, rho(M)))


def conjugacy_class(M: LeviLabel) -> list[LeviLabel]:
    """Standard Levis conjugate to M (block sizes permuted, same r)."""
    return sorted({LeviLabel(p, M.r) for p in itertools.permutations(M.parts)}, key=lambda L: L.parts)
