"""The graph on pairs (M, x), its descending edges and the reduction to M-minimal vertices.

Edges are elementary symmetries: for ``alpha = f_a - f_{a+1}`` the blocks a and
a+1 trade places, for the last restricted root the last block is flipped.  Both
keep M standard, so every vertex carries a plain Levi label.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NotInWeylSetError, RhoUndefinedError
from .levi import LeviLabel, lift, relative_simple_roots, target_label
from .lie import weyl_matrix
from .orbit import OrbitPoint, block_class, bruhat_invariant, minimal_classes, representative, rho_x_at
from .qfield import DEFAULT_DISC, Matrix
from .weyl import SignedPerm, act, all_elements, is_positive, neg


@dataclass(frozen=True)
class Vertex:
    M: LeviLabel
    x: Matrix
    j: SignedPerm

    def to_json(self) -> dict:
        return {"M": self.M.to_json(), "x": self.x.to_json(), "j": self.j.to_json()}

    @classmethod
    def from_json(cls, data, disc: int = DEFAULT_DISC) -> Vertex:
        if isinstance(data, str):
            data = json.loads(data)
        M = LeviLabel.from_json(data["M"])
        return make_vertex(M, Matrix.from_json(data["x"], disc))


def make_vertex(M: LeviLabel, x: Matrix) -> Vertex:
    """Validate x in X normalizing M and record its block data."""
    OrbitPoint(x, M.n)
    w = bruhat_invariant(M, x)
    try:
        j = block_class(M, w)
    except NotInWeylSetError as exc:
        raise NotInWeylSetError(f"x does not normalize {M}: {exc}") from None
    return Vertex(M, x, j)


@dataclass(frozen=True)
class Edge:
    source: Vertex
    target: Vertex
    index: int
    alpha: tuple[Fraction, ...]
    u: SignedPerm
    n_alpha: Matrix
    descending: bool

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "alpha_index": self.index,
            "alpha": [str(a) for a in self.alpha],
            "u": self.u.to_json(),
            "n_alpha": self.n_alpha.to_json(),
            "descending": self.descending,
        }


def elementary_symmetry(k: int, index: int) -> SignedPerm:
    if index < k:
        tau = list(range(1, k + 1))
        tau[index - 1], tau[index] = tau[index], tau[index - 1]
        return SignedPerm(k, tuple(tau), frozenset())
    return SignedPerm.sign_block(k, [k])


def _move(v: Vertex, u: SignedPerm) -> tuple[Vertex, Matrix]:
    w = lift(v.M, u)
    n = weyl_matrix(w, v.x.disc)
    x = n @ v.x @ n.transpose()  # n is a real signed permutation matrix
    return Vertex(target_label(v.M, u), x, u * v.j * u.inverse()), n


def edges_from(v: Vertex) -> list[Edge]:
    out = []
    for index, alpha in enumerate(relative_simple_roots(v.M), start=1):
        image = act(v.j, alpha)
        if image == alpha or image == neg(alpha):
            continue
        u = elementary_symmetry(v.M.k, index)
        target, n = _move(v, u)
        out.append(Edge(v, target, index, alpha, u, n, not is_positive(image)))
    return out


def reverse_edge(e: Edge) -> Edge:
    """The edge back from the target, labelled by the inverse of n_alpha."""
    n_inv = e.n_alpha.transpose()
    x = n_inv @ e.target.x @ e.n_alpha
    u_inv = e.u.inverse()
    back = Vertex(e.source.M, x, u_inv * e.target.j * e.u)
    # the elementary symmetries used here are their own inverses on A_M^*, so the root keeps its index
    descending = not is_positive(act(e.target.j, e.alpha))
    return Edge(e.target, back, e.index, e.alpha, u_inv, n_inv, descending)


@dataclass(frozen=True)
class Reduction:
    terminal: Vertex
    n: Matrix
    j_total: SignedPerm
    path: tuple[Edge, ...]

    def to_json(self) -> dict:
        return {
            "terminal": self.terminal.to_json(),
            "n": self.n.to_json(),
            "j_total": self.j_total.to_json(),
            "path": [e.to_json() for e in self.path],
        }


def reduce(v: Vertex) -> Reduction:
    """Follow the descending edge with the smallest root index until none is left."""
    n = Matrix.identity(2 * v.M.n, v.x.disc)
    total = SignedPerm.identity(v.M.k)
    path = []
    cur = v
    while True:
        down = [e for e in edges_from(cur) if e.descending]
        if not down:
            return Reduction(cur, n, total, tuple(path))
        e = down[0]
        path.append(e)
        n = e.n_alpha @ n
        total = e.u * total
        cur = e.target


# rho covariance ---------------------------------------------------------------

@lru_cache(maxsize=4096)
def vertex_rho(v: Vertex) -> tuple[Fraction, ...]:
    try:
        return rho_x_at(v.M, v.x, v.j).coords
    except DomainError as exc:
        raise RhoUndefinedError(f"rho_x undefined at {v.M}: {exc}") from None


def check_rho_covariance(e: Edge) -> bool:
    return act(e.u, vertex_rho(e.source)) == vertex_rho(e.target)


def check_path_covariance(start: Vertex, red: Reduction) -> bool:
    return act(red.j_total, vertex_rho(start)) == vertex_rho(red.terminal)


def orbit_vertices(n: int, disc: int = DEFAULT_DISC) -> list[Vertex]:
    """All (uMu^-1, n_u x_w n_u^-1) for standard M, M-minimal parity-ok w and u in W(M)."""
    from .levi import enumerate_levis

    out = []
    seen = set()
    for M in enumerate_levis(n):
        for cls in minimal_classes(M):
            if not cls.parity_ok:
                continue
            base = Vertex(M, representative(M, cls.w, disc).x, cls.j)
            for u in all_elements(M.k):
                v = base if u.is_identity() else _move(base, u)[0]
                key = (v.M, v.x)
                if key not in seen:
                    seen.add(key)
                    out.append(v)
    return out
