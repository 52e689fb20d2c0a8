"""Convergence chambers, root-hyperplane subspaces and the distinguished-support ledger."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ChamberDomainError, DimensionError, IncomparableError
from .levi import LeviLabel, enumerate_levis, jmap_with_target, relative_coroot, relative_positive_roots, relative_weyl_set
from .orbit import OrbitClass, block_class, eigensplit_j, minimal_classes, rho_x
from .qfield import DEFAULT_DISC, rational_rank
from .weyl import SignedPerm, act, dot, is_positive

Vector = tuple  # tuple of Fractions in A_M^* = R^k


def _vec(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


def _sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(Fraction(a) - b for a, b in zip(u, v))


# chambers --------------------------------------------------------------------

@dataclass(frozen=True)
class Chamber:
    M: LeviLabel
    j: SignedPerm
    roots: tuple[Vector, ...]
    gamma: Fraction
    rho_x: Vector

    def to_json(self) -> dict:
        return {
            "M": self.M.to_json(),
            "j": self.j.to_json(),
            "sigma_P_x": [[str(a) for a in r] for r in self.roots],
            "gamma": str(self.gamma),
            "rho_x": [str(a) for a in self.rho_x],
        }


def negative_set(M: LeviLabel, j: SignedPerm) -> list[Vector]:
    """Positive restricted roots sent to negative roots by j."""
    return [b for b in relative_positive_roots(M) if not is_positive(act(j, b))]


def chamber(M: LeviLabel, w: SignedPerm, gamma, disc: int = DEFAULT_DISC) -> Chamber:
    j = block_class(M, w)
    return Chamber(M, j, tuple(negative_set(M, j)), Fraction(gamma), rho_x(M, w, disc).coords)


def chamber_contains(ch: Chamber, lam: Sequence) -> bool:
    lam = _vec(lam)
    if len(lam) != ch.M.k:
        raise DimensionError(f"expected {ch.M.k} coordinates, got {len(lam)}")
    mu = _sub(lam, ch.rho_x)
    if act(ch.j, mu) != tuple(-x for x in mu):
        raise ChamberDomainError("lambda - rho_x is not in the -1 eigenspace")
    return all(dot(mu, relative_coroot(b)) > ch.gamma for b in ch.roots)


# affine subspaces ------------------------------------------------------------------

@dataclass(frozen=True)
class AffineSubspace:
    M: LeviLabel
    origin: Vector
    directions: tuple[Vector, ...]
    constraints: tuple[tuple[Vector, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "origin", _vec(self.origin))
        object.__setattr__(self, "directions", tuple(_vec(d) for d in self.directions))
        object.__setattr__(self, "constraints", tuple((_vec(c), Fraction(b)) for c, b in self.constraints))
        for c, b in self.constraints:
            if dot(c, self.origin) != b:
                raise ValueError("origin violates a defining constraint")
            if any(dot(c, d) for d in self.directions):
                raise ValueError("a direction leaves a defining hyperplane")

    @property
    def dim(self) -> int:
        return rational_rank(list(self.directions), self.M.k) if self.directions else 0

    def contains_point(self, p: Sequence) -> bool:
        return _in_span(_sub(p, self.origin), self.directions, self.M.k)

    def contains(self, other: AffineSubspace) -> bool:
        if other.M.k != self.M.k:
            raise IncomparableError("subspaces of different ambient dimension")
        return all(_in_span(d, self.directions, self.M.k) for d in other.directions) and self.contains_point(other.origin)

    def translate(self, j: SignedPerm, target: LeviLabel) -> AffineSubspace:
        return AffineSubspace(
            target,
            act(j, self.origin),
            tuple(act(j, d) for d in self.directions),
            tuple((act(j, c), b) for c, b in self.constraints),
        )

    def to_json(self) -> dict:
        return {
            "M": self.M.to_json(),
            "origin": [str(x) for x in self.origin],
            "directions": [[str(x) for x in d] for d in self.directions],
            "constraints": [{"coroot": [str(x) for x in c], "value": str(b)} for c, b in self.constraints],
            "dim": self.dim,
        }


def _in_span(v: Vector, basis: Sequence[Vector], k: int) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rational_rank(list(basis) + [v], k) == rational_rank(list(basis), k)


def support_subspace(cls: OrbitClass, disc: int = DEFAULT_DISC) -> AffineSubspace:
    """rho_x plus the -1 eigenspace, cut out by root hyperplanes."""
    M, k = cls.M, cls.M.k
    origin = rho_x(M, cls.w, disc).coords
    e = lambda a: tuple(Fraction(1 if b == a else 0) for b in range(1, k + 1))  # noqa: E731
    directions, constraints = [], []
    for a in sorted(cls.R):
        directions.append(_sub(e(a), e(a + 1)))
        c = tuple(x + y for x, y in zip(e(a), e(a + 1)))
        constraints.append((c, dot(c, origin)))
    for a in sorted(cls.S):
        constraints.append((e(a), origin[a - 1]))
    for a in range(cls.ell + 1, k + 1):
        constraints.append((e(a), origin[a - 1]))
    if set(directions) != set(eigensplit_j(M, cls.j).minus_basis):
        raise AssertionError("root-hyperplane directions disagree with the -1 eigenspace")
    return AffineSubspace(M, origin, tuple(directions), tuple(constraints))


# cuspidal data and the order --------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceClass:
    """A cuspidal datum (M, pi) with pi an opaque label, together with an affine subspace."""

    M: LeviLabel
    pi: str
    subspace: AffineSubspace
    tag: str = field(default="")

    @property
    def weyl_orbit_tag(self) -> tuple:
        return (tuple(sorted(self.M.parts)), self.M.r)

    def to_json(self) -> dict:
        return {"M": self.M.to_json(), "pi": self.pi, "tag": self.tag, "subspace": self.subspace.to_json()}


def transporters(src: LeviLabel, dst: LeviLabel) -> list[SignedPerm]:
    """Block data of W(src, dst)."""
    return [jmap_with_target(src, w)[0] for w in relative_weyl_set(src, dst)]


def _succeq(a: SubspaceClass, b: SubspaceClass, moves: Sequence[SignedPerm] | None) -> bool:
    if a.weyl_orbit_tag != b.weyl_orbit_tag:
        raise IncomparableError(f"{a.M} and {b.M} are not Weyl conjugate")
    for j in moves if moves is not None else transporters(b.M, a.M):
        moved = b.subspace.translate(j, a.M)
        # the opaque representation label rides along unchanged
        if a.pi == b.pi and a.subspace.contains(moved):
            return True
    return False


def subspace_order(a: SubspaceClass, b: SubspaceClass, weyl_transporters: Sequence[SignedPerm] | None = None) -> str:
    """``"equal"``, ``"succeq"`` (a above b) or ``"not-succeq"``."""
    up = _succeq(a, b, weyl_transporters)
    back_moves = None if weyl_transporters is None else [j.inverse() for j in weyl_transporters]
    down = _succeq(b, a, back_moves)
    if up and down:
        return "equal"
    return "succeq" if up else "not-succeq"


def split_classes(classes: Sequence[SubspaceClass], distinguished: Sequence[SubspaceClass]) -> tuple[list, list]:
    """Return (circ, hdist): hdist holds every class lying under some distinguished class."""
    circ, hdist = [], []
    for c in classes:
        above = False
        for d in distinguished:
            try:
                if subspace_order(d, c) in ("equal", "succeq"):
                    above = True
                    break
            except IncomparableError:
                continue
        (hdist if above else circ).append(c)
    return circ, hdist


# ledger ------------------------------------------------------------------------------

@dataclass(frozen=True)
class LedgerRow:
    M: LeviLabel
    status: str
    cls: OrbitClass | None = None
    subspace: AffineSubspace | None = None

    def to_json(self) -> dict:
        return {
            "M": self.M.to_json(),
            "status": self.status,
            "class": self.cls.to_json() if self.cls else None,
            "subspace": self.subspace.to_json() if self.subspace else None,
        }


def support_ledger(n: int, disc: int = DEFAULT_DISC) -> list[LedgerRow]:
    rows = []
    for M in enumerate_levis(n):
        if M.r:
            rows.append(LedgerRow(M, "vanishing-levi"))
            continue
        for cls in minimal_classes(M):
            if not cls.parity_ok:
                rows.append(LedgerRow(M, "empty", cls))
            elif cls.cuspidal:
                rows.append(LedgerRow(M, "cuspidal", cls, support_subspace(cls, disc)))
            else:
                rows.append(LedgerRow(M, "non-cuspidal", cls))
    return rows


def distinguished_classes(n: int, pi: str = "pi", disc: int = DEFAULT_DISC) -> list[SubspaceClass]:
    out = []
    for row in support_ledger(n, disc):
        if row.subspace is not None:
            tag = f"{row.M}|{row.cls.j.to_json()}"
            out.append(SubspaceClass(row.M, pi, row.subspace, tag))
    return out
