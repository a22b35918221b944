"""Exact dense linear algebra over a single field level of a tower.

Matrices hold integer element codes; arithmetic goes through the owning
:class:`~maxtrace.gf.GF` level.  Everything returns new values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from maxtrace.errors import FieldMismatchError
from maxtrace.gf import GF, Element


@dataclass(frozen=True)
class Matrix:
    field: GF
    nrows: int
    ncols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.nrows or any(len(r) != self.ncols for r in self.data):
            raise ValueError("matrix data does not match its shape")

    @classmethod
    def from_rows(cls, field: GF, rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            for x in r:
                if not 0 <= x < field.size:
                    raise ValueError(f"entry {x} is not an element of {field}")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: GF, nrows: int, ncols: int) -> Matrix:
        return cls(field, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: GF, n: int) -> Matrix:
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def element(self, i: int, j: int) -> Element:
        return Element(self.field, self.data[i][j])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> Matrix:
        return Matrix(
            self.field, self.ncols, self.nrows, tuple(zip(*self.data)) if self.nrows else ((),) * self.ncols
        )

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def submatrix(self, columns: Sequence[int]) -> Matrix:
        return Matrix(self.field, self.nrows, len(columns), tuple(tuple(r[j] for j in columns) for r in self.data))

    def vstack(self, other: Matrix) -> Matrix:
        _same_field(self, other)
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.data + other.data)

    def __matmul__(self, other: Matrix) -> Matrix:
        _same_field(self, other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = other.transpose().data
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = 0
                for x, y in zip(r, c):
                    if x and y:
                        acc = F.add(acc, F.mul(x, y))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(F, self.nrows, other.ncols, tuple(out))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def map(self, target: GF, fn) -> Matrix:
        """Apply a code-to-code map entry-wise and move to another field."""
        return Matrix(target, self.nrows, self.ncols, tuple(tuple(fn(x) for x in r) for r in self.data))


def _same_field(a: Matrix, b: Matrix) -> None:
    if a.field is not b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")


def _eliminate(F: GF, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduction to RREF; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            li = F.inv(lead)
            rows[r] = [F.mul(li, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    nf = F.neg(f)
                    rows[i] = [x if y == 0 else F.add(x, F.mul(nf, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = [list(r) for r in M.data]
    pivots = _eliminate(M.field, rows, M.ncols)
    return Matrix(M.field, M.nrows, M.ncols, tuple(tuple(r) for r in rows)), len(pivots), pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def row_basis(M: Matrix) -> Matrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    R, r, _ = rref(M)
    return Matrix(M.field, r, M.ncols, R.data[:r])


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    _same_field(A, B)
    return A.ncols == B.ncols and row_basis(A).data == row_basis(B).data


def kernel(M: Matrix) -> Matrix:
    """Basis of the right null space {v : M v^T = 0}, one vector per row."""
    F = M.field
    R, r, pivots = rref(M)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * M.ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.data[i][f])
        basis.append(tuple(v))
    return Matrix(F, len(basis), M.ncols, tuple(basis))


def rank_of_columns(M: Matrix, columns: Iterable[int]) -> int:
    cols = list(columns)
    if len(set(cols)) != len(cols):
        raise ValueError("duplicate column index")
    for c in cols:
        if not 0 <= c < M.ncols:
            raise IndexError(f"column {c} out of range")
    if not cols:
        return 0
    return rank(M.submatrix(cols))


def solve(M: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution x of M x^T = b^T, or None when inconsistent."""
    if len(b) != M.nrows:
        raise ValueError("right-hand side has the wrong length")
    F = M.field
    rows = [list(r) + [int(y)] for r, y in zip(M.data, b)]
    pivots = _eliminate(F, rows, M.ncols + 1)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [0] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][-1]
    return tuple(x)


class Span:
    """Incrementally grown subspace kept in canonical reduced echelon form.

    Over GF(2) vectors are packed into int bitmasks; otherwise tuples of
    codes.  Use :meth:`pack` to convert a code sequence.  Two spans over the
    same field are equal iff their ``key`` values are equal.
    """

    __slots__ = ("field", "binary", "rows", "pivots")

    def __init__(self, field: GF, rows=(), pivots=()):
        self.field = field
        self.binary = field.size == 2
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)

    def pack(self, vector: Sequence[int]):
        if self.binary:
            out = 0
            for i, x in enumerate(vector):
                if x:
                    out |= 1 << i
            return out
        return tuple(vector)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def key(self):
        return self.rows

    def _reduce(self, v):
        if self.binary:
            for row, p in zip(self.rows, self.pivots):
                if v >> p & 1:
                    v ^= row
            return v
        F = self.field
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                nf = F.neg(f)
                v = [x if y == 0 else F.add(x, F.mul(nf, y)) for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        r = self._reduce(v)
        return not r if self.binary else not any(r)

    def insert(self, v) -> Span:
        """Span of self and v (self is returned unchanged if v is inside)."""
        r = self._reduce(v)
        if self.binary:
            if not r:
                return self
            p = (r & -r).bit_length() - 1
            rows = [row ^ r if row >> p & 1 else row for row in self.rows]
            new = rows + [r]
            order = sorted(range(len(new)), key=lambda i: (self.pivots + (p,))[i])
            piv = self.pivots + (p,)
            return Span(self.field, (new[i] for i in order), (piv[i] for i in order))
        if not any(r):
            return self
        F = self.field
        p = next(i for i, x in enumerate(r) if x)
        li = F.inv(r[p])
        r = tuple(F.mul(li, x) for x in r)
        rows = []
        for row in self.rows:
            f = row[p]
            if f:
                nf = F.neg(f)
                row = tuple(x if y == 0 else F.add(x, F.mul(nf, y)) for x, y in zip(row, r))
            rows.append(row)
        rows.append(r)
        piv = self.pivots + (p,)
        order = sorted(range(len(rows)), key=lambda i: piv[i])
        return Span(self.field, (rows[i] for i in order), (piv[i] for i in order))
