"""Matrix models: J_n, the unitary Lie algebra, block embeddings and Weyl matrices.

Rows and columns are indexed by positions ``1..2n``.  Position ``p <= n``
carries the character ``e_p`` of the diagonal torus and ``p > n`` carries
``-e_{2n+1-p}``.  Every Lie algebra element of u(2n) is determined by free
entries: ``X[a][b]`` and ``X[b'][a']`` (with ``p' = 2n+1-p``) are tied by
``X[a][b] = -j_a j_b conj(X[b'][a'])`` where ``j_p = +1`` for ``p <= n``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import NotUnitaryError
from .levi import LeviLabel, project
from .qfield import DEFAULT_DISC, Matrix, QuadExt, nullspace
from .weyl import SignedPerm, to_symmetric_perm


def antidiag(size: int, disc: int = DEFAULT_DISC) -> Matrix:
    return Matrix.monomial([size - 1 - p for p in range(size)], [1] * size, disc)


def J(n: int, disc: int = DEFAULT_DISC) -> Matrix:
    size = 2 * n
    images = [size - 1 - p for p in range(size)]
    # column p < n lands in row 2n-1-p with -1 (lower-left -w), column p >= n with +1
    signs = [-1 if p < n else 1 for p in range(size)]
    return Matrix.monomial(images, signs, disc)


def is_unitary(g: Matrix) -> bool:
    if g.rows != g.cols or g.rows % 2:
        return False
    j = J(g.rows // 2, g.disc)
    return g.conj_transpose() @ j @ g == j


def star(g: Matrix) -> Matrix:
    """``w conj(g)^{-T} w``, the partner of ``g`` in the block embedding."""
    w = antidiag(g.rows, g.disc)
    return w @ g.conjugate().inverse().transpose() @ w


def position_weight(n: int, p: int) -> tuple[int, int]:
    """(coordinate, sign) of the torus character at 1-based position p."""
    return (p, 1) if p <= n else (2 * n + 1 - p, -1)


def entry_weight(n: int, p: int, q: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    i, s = position_weight(n, p)
    out[i - 1] += s
    i, s = position_weight(n, q)
    out[i - 1] -= s
    return tuple(out)


def block_ranks(M: LeviLabel) -> list[int]:
    """Rank of each position in the block order B_1 < .. < B_k < C < B_k* < .. < B_1*."""
    n, k = M.n, M.k
    out = []
    for p in range(1, 2 * n + 1):
        if p <= n:
            a = M.block_of(p)
            out.append(a if a else k + 1)
        else:
            a = M.block_of(2 * n + 1 - p)
            out.append(2 * k + 2 - a if a else k + 1)
    return out


def iota(M: LeviLabel, gs: Sequence[Matrix], h: Matrix | None = None, disc: int = DEFAULT_DISC) -> Matrix:
    """Block embedding diag(g_1, .., g_k, h, g_k*, .., g_1*)."""
    blocks = list(gs)
    if M.r:
        blocks.append(h if h is not None else Matrix.identity(2 * M.r, disc))
    blocks += [star(g) for g in reversed(gs)]
    return Matrix.block_diag(blocks, disc)


def weyl_matrix(w: SignedPerm, disc: int = DEFAULT_DISC) -> Matrix:
    """Signed permutation matrix in U_{2n} representing ``w``."""
    n = w.n
    sigma = to_symmetric_perm(w)
    signs = [1 if p <= n or sigma[p - 1] > n else -1 for p in range(1, 2 * n + 1)]
    m = Matrix.monomial([s - 1 for s in sigma], signs, disc)
    if not is_unitary(m):
        raise NotUnitaryError(f"monomial representative of {w!r} is not unitary")
    return m


# u(2n) parametrization ---------------------------------------------------------

@lru_cache(maxsize=None)
def _u_coords(n: int) -> tuple[tuple[int, int, int], ...]:
    """Free F-coordinates of u(2n): (p, q, part) with part 0 = rational, 1 = sqrt(d) component.

    Each pair {(a, b), (b', a')} contributes its lexicographically smaller entry;
    self-paired entries (b = a') are rational and contribute one coordinate.
    """
    size = 2 * n
    out = []
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            mate = (size + 1 - b, size + 1 - a)
            if (a, b) > mate:
                continue
            out.append((a, b, 0))
            if (a, b) != mate:
                out.append((a, b, 1))
    return tuple(out)


def _j(n: int, p: int) -> int:
    return 1 if p <= n else -1


def u_basis_element(n: int, coord: tuple[int, int, int], disc: int = DEFAULT_DISC) -> Matrix:
    a, b, part = coord
    size = 2 * n
    val = QuadExt(1, 0, disc) if part == 0 else QuadExt(0, 1, disc)
    rows = [[QuadExt(0, 0, disc)] * size for _ in range(size)]
    rows[a - 1][b - 1] = val
    ma, mb = size + 1 - b, size + 1 - a
    # X[b'][a'] = -j_{b'} j_{a'} conj(X[a][b]) and j_{p'} = -j_p
    partner = val.conjugate() * (-_j(n, b) * _j(n, a))
    rows[ma - 1][mb - 1] = partner if (ma, mb) != (a, b) else val
    return Matrix(rows, disc)


def in_u(x: Matrix) -> bool:
    n = x.rows // 2
    j = J(n, x.disc)
    return (x.conj_transpose() @ j + j @ x).is_zero()


def subalgebra_coords(n: int, keep: Callable[[int, int], bool]) -> list[tuple[int, int, int]]:
    """Free coordinates whose entry (p, q) satisfies ``keep``; ``keep`` must respect the pairing."""
    return [c for c in _u_coords(n) if keep(c[0], c[1])]


def unipotent_coords(M: LeviLabel) -> list[tuple[int, int, int]]:
    ranks = block_ranks(M)
    return subalgebra_coords(M.n, lambda p, q: ranks[p - 1] < ranks[q - 1])


def levi_coords(M: LeviLabel) -> list[tuple[int, int, int]]:
    ranks = block_ranks(M)
    return subalgebra_coords(M.n, lambda p, q: ranks[p - 1] == ranks[q - 1])


def unipotent_weight_multiplicities(M: LeviLabel) -> dict[tuple[Fraction, ...], int]:
    out: dict[tuple[Fraction, ...], int] = {}
    for p, q, _ in unipotent_coords(M):
        w = entry_weight(M.n, p, q)
        out[w] = out.get(w, 0) + 1
    return out


def twisted_fixed_space(x: Matrix, coords: Sequence[tuple[int, int, int]]) -> list[list[Fraction]]:
    """F-basis (in ``coords``) of ``{u in span(coords) : x conj(u) conj(x) = u}``."""
    n = x.rows // 2
    disc = x.disc
    xb = x.conjugate()
    columns = []
    for c in coords:
        b = u_basis_element(n, c, disc)
        columns.append(x @ b.conjugate() @ xb - b)
    size = 2 * n
    equations = []
    for p in range(size):
        for q in range(size):
            re_row = {t: col[p, q].re for t, col in enumerate(columns) if col[p, q].re}
            im_row = {t: col[p, q].im for t, col in enumerate(columns) if col[p, q].im}
            if re_row:
                equations.append(re_row)
            if im_row:
                equations.append(im_row)
    return nullspace(equations, len(coords))


def weight_classes(M: LeviLabel, coords: Sequence[tuple[int, int, int]], fold: Callable) -> dict:
    """Group coordinate indices by ``fold(project(weight))``."""
    out: dict = {}
    for t, (p, q, _) in enumerate(coords):
        key = fold(project(M, entry_weight(M.n, p, q)))
        out.setdefault(key, []).append(t)
    return out
