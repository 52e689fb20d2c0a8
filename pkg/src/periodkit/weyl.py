"""Signed permutations, the type C relative root system and involutions.

An element ``w = tau*c`` acts on R^n by ``w(e_i) = -e_{tau(i)}`` when ``i`` is in
``c`` and ``+e_{tau(i)}`` otherwise.  All indices are 1-based, as in the JSON
window format ``{"n": n, "tau": [...], "c": [...]}``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, NotInvolutionError

RootVector = tuple  # tuple of Fractions, one per coordinate e_1..e_n


def vec(*coords) -> RootVector:
    return tuple(Fraction(c) for c in coords)


def unit(n: int, i: int, scale: int = 1) -> RootVector:
    """``scale * e_i`` in R^n (1-based ``i``)."""
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(1, n + 1))


def is_positive(v: Sequence[Fraction]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"pairing vectors of length {len(u)} and {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def coroot(alpha: Sequence[Fraction]) -> RootVector:
    norm = dot(alpha, alpha)
    return tuple(2 * a / norm for a in alpha)


def reflect(alpha: Sequence[Fraction], v: Sequence[Fraction]) -> RootVector:
    k = dot(v, coroot(alpha))
    return tuple(Fraction(x) - k * a for x, a in zip(v, alpha))


def neg(v: Sequence[Fraction]) -> RootVector:
    return tuple(-x for x in v)


@dataclass(frozen=True)
class SignedPerm:
    n: int
    tau: tuple[int, ...]
    c: frozenset[int]

    def __post_init__(self):
        tau = tuple(int(t) for t in self.tau)
        if self.n < 0 or sorted(tau) != list(range(1, self.n + 1)):
            raise ValueError(f"tau={self.tau!r} is not a permutation of 1..{self.n}")
        c = frozenset(int(i) for i in self.c)
        if not c <= set(range(1, self.n + 1)):
            raise ValueError(f"sign set {sorted(c)} not inside 1..{self.n}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "c", c)

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(n, tuple(range(1, n + 1)), frozenset())

    @classmethod
    def sign_block(cls, n: int, signs: Iterable[int]) -> SignedPerm:
        return cls(n, tuple(range(1, n + 1)), frozenset(signs))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> SignedPerm:
        """Build from signed one-line notation, e.g. ``[-2, 1]`` means e_1 -> -e_2, e_2 -> e_1."""
        n = len(images)
        return cls(n, tuple(abs(i) for i in images), frozenset(i + 1 for i, v in enumerate(images) if v < 0))

    def images(self) -> tuple[int, ...]:
        return tuple(-t if i + 1 in self.c else t for i, t in enumerate(self.tau))

    def sign(self, i: int) -> int:
        return -1 if i in self.c else 1

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        if other.n != self.n:
            raise DimensionError(f"composing elements of W_{self.n} and W_{other.n}")
        tau = tuple(self.tau[other.tau[i] - 1] for i in range(self.n))
        c = {i for i in range(1, self.n + 1) if (i in other.c) != (other.tau[i - 1] in self.c)}
        return SignedPerm(self.n, tau, frozenset(c))

    def inverse(self) -> SignedPerm:
        inv = [0] * self.n
        for i, t in enumerate(self.tau):
            inv[t - 1] = i + 1
        # w^{-1}(e_{tau(i)}) = sign_i e_i, so the sign sits on tau(i)
        return SignedPerm(self.n, tuple(inv), frozenset(self.tau[i - 1] for i in self.c))

    def is_identity(self) -> bool:
        return not self.c and all(t == i + 1 for i, t in enumerate(self.tau))

    def is_involution(self) -> bool:
        return (self * self).is_identity()

    def to_json(self) -> dict:
        return {"n": self.n, "tau": list(self.tau), "c": sorted(self.c)}

    @classmethod
    def from_json(cls, data) -> SignedPerm:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "tau" not in data:
            raise ValueError("signed permutation JSON needs keys n, tau, c")
        tau = tuple(data["tau"])
        n = int(data.get("n", len(tau)))
        if n != len(tau):
            raise DimensionError(f"n={n} but tau has length {len(tau)}")
        return cls(n, tau, frozenset(data.get("c", [])))

    def __repr__(self) -> str:
        return f"SignedPerm(n={self.n}, tau={list(self.tau)}, c={sorted(self.c)})"


def act(w: SignedPerm, v: Sequence[Fraction]) -> RootVector:
    if len(v) != w.n:
        raise DimensionError(f"element of W_{w.n} acting on a vector of length {len(v)}")
    out = [Fraction(0)] * w.n
    for i in range(w.n):
        x = Fraction(v[i])
        out[w.tau[i] - 1] = -x if i + 1 in w.c else x
    return tuple(out)


# roots ---------------------------------------------------------------------

def simple_roots(n: int) -> list[RootVector]:
    out = [tuple(Fraction(1 if j == i else -1 if j == i + 1 else 0) for j in range(1, n + 1)) for i in range(1, n)]
    out.append(unit(n, n, 2))
    return out


@lru_cache(maxsize=None)
def _positive_roots(n: int) -> tuple[RootVector, ...]:
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append(tuple(Fraction(1 if t == i else -1 if t == j else 0) for t in range(1, n + 1)))
            out.append(tuple(Fraction(1 if t in (i, j) else 0) for t in range(1, n + 1)))
        out.append(unit(n, i, 2))
    return tuple(sorted(out, reverse=True))


def positive_roots(n: int) -> list[RootVector]:
    return list(_positive_roots(n))


def all_roots(n: int) -> list[RootVector]:
    pos = positive_roots(n)
    return pos + [neg(a) for a in pos]


def simple_reflection(n: int, i: int) -> SignedPerm:
    """``s_{alpha_i}`` for the i-th simple root (``i = n`` is the long root)."""
    if i == n:
        return SignedPerm.sign_block(n, [n])
    tau = list(range(1, n + 1))
    tau[i - 1], tau[i] = tau[i], tau[i - 1]
    return SignedPerm(n, tuple(tau), frozenset())


def root_reflection(alpha: Sequence[Fraction]) -> SignedPerm:
    """The element of W_n acting on R^n as the reflection in ``alpha``."""
    n = len(alpha)
    images = []
    for i in range(1, n + 1):
        img = reflect(alpha, unit(n, i))
        j = next(t for t, x in enumerate(img) if x)
        images.append((j + 1) * (1 if img[j] > 0 else -1))
    return SignedPerm.from_images(images)


def inversions(w: SignedPerm) -> list[RootVector]:
    """Positive roots sent to negative roots by ``w``."""
    return [a for a in _positive_roots(w.n) if not is_positive(act(w, a))]


def length(w: SignedPerm) -> int:
    return len(inversions(w))


def all_elements(n: int) -> list[SignedPerm]:
    out = []
    for tau in itertools.permutations(range(1, n + 1)):
        for bits in range(1 << n):
            out.append(SignedPerm(n, tau, frozenset(i + 1 for i in range(n) if bits >> i & 1)))
    return out


def longest_element(n: int, generators: Sequence[int] | None = None) -> SignedPerm:
    """Longest element of the subgroup generated by the listed simple reflections.

    Greedy: keep multiplying on the right by a generator that raises the length.
    """
    gens = [simple_reflection(n, i) for i in (range(1, n + 1) if generators is None else generators)]
    w = SignedPerm.identity(n)
    ell = 0
    grew = True
    while grew:
        grew = False
        for s in gens:
            cand = w * s
            lc = length(cand)
            if lc > ell:
                w, ell, grew = cand, lc, True
                break
    return w


# involutions -----------------------------------------------------------------

def involutions(n: int) -> list[SignedPerm]:
    """Involutions via the characterization tau^2 = 1 and tau(c) = c."""
    out = []
    for tau in itertools.permutations(range(1, n + 1)):
        if any(tau[tau[i] - 1] != i + 1 for i in range(n)):
            continue
        for bits in range(1 << n):
            c = frozenset(i + 1 for i in range(n) if bits >> i & 1)
            if {tau[i - 1] for i in c} == c:
                out.append(SignedPerm(n, tau, c))
    return out


def _adjacent_matchings(k: int) -> list[list[int]]:
    """Sets of starting points of disjoint adjacent transpositions inside 1..k."""
    if k <= 1:
        return [[]]
    out = [m for m in _adjacent_matchings(k - 1)]
    out += [m + [k - 1] for m in _adjacent_matchings(k - 2)]
    return [sorted(m) for m in out]


def minimal_involutions(n: int) -> list[SignedPerm]:
    """``tau * c_{k,n}`` with ``tau`` a product of disjoint adjacent transpositions in S_k."""
    out = []
    for k in range(n + 1):
        for starts in _adjacent_matchings(k):
            tau = list(range(1, n + 1))
            for s in starts:
                tau[s - 1], tau[s] = s + 1, s
            out.append(SignedPerm(n, tuple(tau), frozenset(range(k + 1, n + 1))))
    return sorted(out, key=_sort_key)


def _sort_key(w: SignedPerm):
    return (len(w.c), w.tau, sorted(w.c))


def levi_simple_roots(n: int, parts: Sequence[int], r: int) -> list[int]:
    """Indices of the simple roots of W_n lying in the Levi labelled (parts; r)."""
    idx = []
    pos = 0
    for m in parts:
        idx += list(range(pos + 1, pos + m))
        pos += m
    if r:
        idx += list(range(pos + 1, n + 1))
    return idx


def is_minimal_by_definition(w: SignedPerm) -> bool:
    """Search standard Levis L for ``w = w_0^L`` with ``w`` negating every simple root of L."""
    from .levi import enumerate_levis

    n = w.n
    simple = simple_roots(n)
    for lab in enumerate_levis(n):
        gens = levi_simple_roots(n, lab.parts, lab.r)
        if longest_element(n, gens) != w:
            continue
        if all(act(w, simple[i - 1]) == neg(simple[i - 1]) for i in gens):
            return True
    return False


@dataclass(frozen=True)
class InvolutionProfile:
    c_plus: frozenset[int]
    c_minus: frozenset[int]
    c_neq: frozenset[int]
    c_less: frozenset[int]

    def to_json(self) -> dict:
        return {
            "c_plus": sorted(self.c_plus),
            "c_minus": sorted(self.c_minus),
            "c_neq": sorted(self.c_neq),
            "c_less": sorted(self.c_less),
        }


def profile(w: SignedPerm) -> InvolutionProfile:
    if not w.is_involution():
        raise NotInvolutionError(f"{w!r} is not an involution")
    fixed = {i for i in range(1, w.n + 1) if w.tau[i - 1] == i}
    return InvolutionProfile(
        c_plus=frozenset(fixed & w.c),
        c_minus=frozenset(fixed - w.c),
        c_neq=frozenset(set(range(1, w.n + 1)) - fixed),
        c_less=frozenset(i for i in range(1, w.n + 1) if i < w.tau[i - 1]),
    )


# embedding into S_{2n} ---------------------------------------------------------

def to_symmetric_perm(w: SignedPerm) -> tuple[int, ...]:
    """One-line image of ``w`` in S_{2n}; position ``p > n`` stands for ``-e_{2n+1-p}``."""
    n = w.n
    sigma = [0] * (2 * n)
    for i in range(1, n + 1):
        t = w.tau[i - 1]
        img = 2 * n + 1 - t if i in w.c else t
        sigma[i - 1] = img
        sigma[2 * n - i] = 2 * n + 1 - img
    return tuple(sigma)


def from_symmetric_perm(sigma: Sequence[int]) -> SignedPerm:
    m = len(sigma)
    if m % 2:
        raise DimensionError("symmetric permutations live in S_{2n}")
    n = m // 2
    for p in range(1, m + 1):
        if sigma[m - p] != m + 1 - sigma[p - 1]:
            raise ValueError(f"{list(sigma)} does not commute with i -> {m + 1}-i")
    images = []
    for i in range(1, n + 1):
        s = sigma[i - 1]
        images.append(s if s <= n else -(m + 1 - s))
    return SignedPerm.from_images(images)
