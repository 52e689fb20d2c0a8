"""Exact arithmetic over Q and a quadratic extension E = Q(sqrt d).

Rationals are :class:`fractions.Fraction`.  :class:`QuadExt` is ``re + im*sqrt(d)``
with Galois conjugation, and :class:`Matrix` is an immutable dense matrix of
``QuadExt`` entries with exact Gaussian elimination.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, DiscriminantError

Rational = Fraction

DEFAULT_DISC = -1

_Scalar = "int | Fraction | QuadExt"


def _squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    m = abs(d)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def check_disc(d: int) -> int:
    if not isinstance(d, int) or not _squarefree(d):
        raise DiscriminantError(f"discriminant must be a square-free integer != 0, 1; got {d!r}")
    return d


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class QuadExt:
    """Element ``re + im*sqrt(disc)`` of Q(sqrt disc)."""

    __slots__ = ("re", "im", "disc")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0, disc: int = DEFAULT_DISC):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self.disc = disc

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.disc != self.disc:
                raise DiscriminantError(f"cannot combine elements of Q(sqrt {self.disc}) and Q(sqrt {other.disc})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.disc)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.re + o.re, self.im + o.im, self.disc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.re - o.re, self.im - o.im, self.disc)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadExt(-self.re, -self.im, self.disc)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self.re, self.im, o.re, o.im
        if not b and not e:
            return QuadExt(a * c, 0, self.disc)
        return QuadExt(a * c + self.disc * b * e, a * e + b * c, self.disc)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re - self.disc * self.im * self.im

    def conjugate(self) -> QuadExt:
        return QuadExt(self.re, -self.im, self.disc)

    def inverse(self) -> QuadExt:
        nrm = self.norm()
        if not nrm:
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.re / nrm, -self.im / nrm, self.disc)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return self.disc == other.disc and self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im, self.disc))

    def __repr__(self) -> str:
        return f"QuadExt({self.re}, {self.im}, disc={self.disc})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self) -> str:
        """Serialize as ``a/b`` or ``a/b+c/e*s`` (``s`` is the formal sqrt(disc))."""
        head = format_rational(self.re)
        if not self.im:
            return head
        sign = "-" if self.im < 0 else "+"
        return f"{head}{sign}{format_rational(abs(self.im))}*s"

    @classmethod
    def from_str(cls, text: str, disc: int = DEFAULT_DISC) -> QuadExt:
        m = _ENTRY_RE.fullmatch(text.replace(" ", ""))
        if not m:
            raise ValueError(f"malformed field element {text!r}")
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_txt = m.group("im")
        if im_txt is None:
            return cls(re_part, 0, disc)
        sign = -1 if m.group("sign") == "-" else 1
        im_val = Fraction(im_txt) if im_txt else Fraction(1)
        return cls(re_part, sign * im_val, disc)


_NUM = r"[+-]?\d+(?:/\d+)?"
_ENTRY_RE = re.compile(rf"(?P<re>{_NUM})?(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)?\*?s)?")


def as_quad(value, disc: int = DEFAULT_DISC) -> QuadExt:
    if isinstance(value, QuadExt):
        if value.disc != disc:
            raise DiscriminantError(f"entry has disc {value.disc}, expected {disc}")
        return value
    if isinstance(value, (int, Fraction)):
        return QuadExt(value, 0, disc)
    if isinstance(value, str):
        return QuadExt.from_str(value, disc)
    raise TypeError(f"cannot interpret {value!r} as an element of E")


class Matrix:
    """Immutable dense matrix over E = Q(sqrt disc)."""

    __slots__ = ("rows", "cols", "disc", "_entries", "_hash")

    def __init__(self, entries: Sequence[Sequence], disc: int = DEFAULT_DISC):
        rows = tuple(tuple(as_quad(v, disc) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrices must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        self._entries = rows
        self.rows = len(rows)
        self.cols = width
        self.disc = disc
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, disc: int) -> Matrix:
        obj = object.__new__(cls)
        obj._entries = rows
        obj.rows = len(rows)
        obj.cols = len(rows[0])
        obj.disc = disc
        obj._hash = None
        return obj

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, size: int, disc: int = DEFAULT_DISC) -> Matrix:
        one, zero = QuadExt(1, 0, disc), QuadExt(0, 0, disc)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size)), disc)

    @classmethod
    def zeros(cls, rows: int, cols: int, disc: int = DEFAULT_DISC) -> Matrix:
        zero = QuadExt(0, 0, disc)
        return cls._raw(tuple((zero,) * cols for _ in range(rows)), disc)

    @classmethod
    def diag(cls, values: Sequence, disc: int = DEFAULT_DISC) -> Matrix:
        size = len(values)
        zero = QuadExt(0, 0, disc)
        vals = [as_quad(v, disc) for v in values]
        return cls._raw(tuple(tuple(vals[i] if i == j else zero for j in range(size)) for i in range(size)), disc)

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix], disc: int = DEFAULT_DISC) -> Matrix:
        size = sum(b.rows for b in blocks)
        zero = QuadExt(0, 0, disc)
        out = [[zero] * size for _ in range(size)]
        off = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[off + i][off + j] = b._entries[i][j]
            off += b.rows
        return cls._raw(tuple(tuple(r) for r in out), disc)

    @classmethod
    def monomial(cls, images: Sequence[int], signs: Sequence[int], disc: int = DEFAULT_DISC) -> Matrix:
        """Matrix sending basis vector ``e_p`` to ``signs[p] * e_{images[p]}`` (0-based)."""
        size = len(images)
        zero = QuadExt(0, 0, disc)
        out = [[zero] * size for _ in range(size)]
        for p, (q, s) in enumerate(zip(images, signs)):
            out[q][p] = QuadExt(s, 0, disc)
        return cls._raw(tuple(tuple(r) for r in out), disc)

    # access ---------------------------------------------------------------
    def __getitem__(self, idx: tuple[int, int]) -> QuadExt:
        i, j = idx
        return self._entries[i][j]

    def row(self, i: int) -> tuple[QuadExt, ...]:
        return self._entries[i]

    def to_rows(self) -> list[list[QuadExt]]:
        return [list(r) for r in self._entries]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        cols = list(cols)
        return Matrix._raw(tuple(tuple(self._entries[i][j] for j in cols) for i in rows), self.disc)

    def is_rational(self) -> bool:
        return all(not v.im for r in self._entries for v in r)

    def is_zero(self) -> bool:
        return not any(v for r in self._entries for v in r)

    # algebra ---------------------------------------------------------------
    def _same_disc(self, other: Matrix) -> None:
        if other.disc != self.disc:
            raise DiscriminantError("matrices over different quadratic fields")

    def __add__(self, other: Matrix) -> Matrix:
        self._same_disc(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._entries, other._entries)), self.disc)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_disc(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._entries, other._entries)), self.disc)

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._entries), self.disc)

    def scale(self, c) -> Matrix:
        c = as_quad(c, self.disc)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._entries), self.disc)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same_disc(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        zero = QuadExt(0, 0, self.disc)
        cols_b = other.cols
        b_rows = other._entries
        out = []
        for row in self._entries:
            acc = [zero] * cols_b
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = b_rows[k]
                for j in range(cols_b):
                    b = brow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), self.disc)

    def transpose(self) -> Matrix:
        return Matrix._raw(tuple(zip(*self._entries)), self.disc)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.disc == other.disc and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.disc, self._entries))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.to_json()}, disc={self.disc})"

    # elimination -----------------------------------------------------------
    def _echelon(self) -> tuple[list[list[QuadExt]], list[int], int]:
        """Row-reduce a working copy; return (rows, pivot columns, sign of the permutation)."""
        a = [list(r) for r in self._entries]
        pivots: list[int] = []
        sign = 1
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][c]), None)
            if piv is None:
                continue
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                sign = -sign
            inv = a[r][c].inverse()
            for i in range(r + 1, self.rows):
                if a[i][c]:
                    f = a[i][c] * inv
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return a, pivots, sign

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> QuadExt:
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        a, pivots, sign = self._echelon()
        if len(pivots) < self.rows:
            return QuadExt(0, 0, self.disc)
        out = QuadExt(sign, 0, self.disc)
        for i in range(self.rows):
            out = out * a[i][i]
        return out

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        size = self.rows
        one, zero = QuadExt(1, 0, self.disc), QuadExt(0, 0, self.disc)
        a = [list(r) + [one if i == j else zero for j in range(size)] for i, r in enumerate(self._entries)]
        for c in range(size):
            piv = next((i for i in range(c, size) if a[i][c]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = a[c][c].inverse()
            a[c] = [x * inv for x in a[c]]
            for i in range(size):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
        return Matrix._raw(tuple(tuple(r[size:]) for r in a), self.disc)

    def rank_profile(self) -> list[list[int]]:
        """``out[i][j]`` = rank of the lower-left block rows ``i..`` x cols ``..j`` (0-based, exclusive j).

        ``out`` has shape ``(rows + 1) x (cols + 1)``; row ``rows`` and column 0 are zero.
        """
        out = [[0] * (self.cols + 1) for _ in range(self.rows + 1)]
        for i in range(self.rows):
            basis: dict[int, list[QuadExt]] = {}
            height = self.rows - i
            for j in range(self.cols):
                v = [self._entries[i + t][j] for t in range(height)]
                for p, bvec in basis.items():
                    if v[p]:
                        f = v[p] / bvec[p]
                        v = [x - f * y for x, y in zip(v, bvec)]
                lead = next((t for t in range(height) if v[t]), None)
                if lead is not None:
                    basis[lead] = v
                out[i][j + 1] = len(basis)
        return out

    # Galois ------------------------------------------------------------------
    def conjugate(self) -> Matrix:
        """Entry-wise Galois conjugation z -> z-bar."""
        return Matrix._raw(tuple(tuple(v.conjugate() for v in r) for r in self._entries), self.disc)

    def conj_transpose(self) -> Matrix:
        return self.conjugate().transpose()

    # serialization -------------------------------------------------------------
    def to_json(self) -> list[list[str]]:
        return [[v.to_str() for v in r] for r in self._entries]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data, disc: int = DEFAULT_DISC) -> Matrix:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be an array of arrays")
        return cls([[QuadExt.from_str(str(v), disc) for v in r] for r in data], disc)


def conjugate(m: Matrix) -> Matrix:
    return m.conjugate()


def rank(m: Matrix) -> int:
    return m.rank()


def realify(m: Matrix) -> Matrix:
    """Rational matrix of ``m`` viewed as an F-linear map on (re, im) coordinates.

    Coordinates are interleaved: vector index ``2t`` holds ``re``, ``2t+1`` holds ``im``.
    """
    d = m.disc
    out = [[Fraction(0)] * (2 * m.cols) for _ in range(2 * m.rows)]
    for i in range(m.rows):
        for j in range(m.cols):
            z = m[i, j]
            a, b = z.re, z.im
            out[2 * i][2 * j] = a
            out[2 * i][2 * j + 1] = d * b
            out[2 * i + 1][2 * j] = b
            out[2 * i + 1][2 * j + 1] = a
    return Matrix(out, d)


def nullspace(rows: Sequence[dict[int, Fraction] | Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v in F^ncols : row . v = 0 for every row}``.

    Rows may be dense sequences or sparse ``{column: coefficient}`` dicts.  The
    basis is the standard one read off the reduced row-echelon form.
    """
    work: list[dict[int, Fraction]] = []
    for r in rows:
        if isinstance(r, dict):
            d = {c: Fraction(v) for c, v in r.items() if v}
        else:
            d = {c: Fraction(v) for c, v in enumerate(r) if v}
        if d:
            work.append(d)
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for r in work:
        for pc, prow in pivot_rows.items():
            f = r.get(pc)
            if f:
                for c, v in prow.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for other in pivot_rows.values():
            f = other.get(pc)
            if f:
                for c, v in r.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        pivot_rows[pc] = r
    free = [c for c in range(ncols) if c not in pivot_rows]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for pc, prow in pivot_rows.items():
            coeff = prow.get(fc)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


def solve_linear(a: Matrix) -> list[list[Fraction]]:
    """F-basis of the kernel of the rational matrix ``a`` (use :func:`realify` for E-matrices)."""
    if not a.is_rational():
        raise ValueError("solve_linear expects an F-linear system; realify E-valued matrices first")
    return nullspace([[v.re for v in a.row(i)] for i in range(a.rows)], a.cols)


def rational_rank(vectors: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    """Rank over F of a list of rational vectors."""
    if not vectors:
        return 0
    ncols = len(vectors[0]) if ncols is None else ncols
    return ncols - len(nullspace(list(vectors), ncols))
