"""Trace codes, subfield subcodes and the maximum trace dimension property."""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from maxtrace.codes import (
    ENUMERATION_CAP,
    LinearCode,
    _check_cap,
    codewords,
    dual,
    generalized_reed_solomon,
    parse_header,
    parse_matrix_lines,
)
from maxtrace.errors import CodeFileError, FieldMismatchError
from maxtrace.gf import FieldTower, field_tower
from maxtrace.linalg import Matrix, Span, kernel, rank, row_basis

MULTIPLIER_CAP = 2**24


@dataclass(frozen=True, eq=False)
class SubfieldCode:
    """A GF(q)-linear code of length n; ``generator`` has full row rank."""

    tower: FieldTower
    generator: Matrix

    def __post_init__(self):
        if self.generator.field is not self.tower.base:
            raise FieldMismatchError("subfield code generator must live in GF(q)")

    @classmethod
    def span(cls, tower: FieldTower, M: Matrix) -> SubfieldCode:
        return cls(tower, row_basis(M))

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @functools.cached_property
    def canonical(self):
        return row_basis(self.generator).data

    def __eq__(self, other):
        if not isinstance(other, SubfieldCode):
            return NotImplemented
        return self.tower is other.tower and self.n == other.n and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.tower.spec, self.n, self.canonical))

    def __repr__(self) -> str:
        return f"SubfieldCode([{self.n}, {self.k}] over GF({self.tower.q}))"

    def dual(self) -> SubfieldCode:
        return SubfieldCode(self.tower, kernel(self.generator))


def trace_matrix(code: LinearCode) -> Matrix:
    """The mk x n matrix with rows tr(alpha^i g_j) over GF(q)."""
    t = code.tower
    F = t.top
    rows = []
    for g in code.generator.data:
        for i in range(t.m):
            beta = t.q**i
            rows.append(tuple(t.trace(F.mul(beta, x)) for x in g))
    return Matrix(t.base, len(rows), code.n, tuple(rows))


def trace_code(code: LinearCode) -> SubfieldCode:
    return SubfieldCode.span(code.tower, trace_matrix(code))


def trace_dimension(code: LinearCode) -> int:
    return rank(trace_matrix(code))


def subfield_subcode(code: LinearCode) -> SubfieldCode:
    """C meet GF(q)^n, as the GF(q)-kernel of the expanded parity checks."""
    t = code.tower
    H = dual(code).generator
    rows = []
    for h in H.data:
        coords = [t.coordinates(x) for x in h]
        for i in range(t.m):
            rows.append(tuple(c[i] for c in coords))
    expanded = Matrix(t.base, len(rows), code.n, tuple(rows))
    return SubfieldCode(t, kernel(expanded))


def has_max_trace_dimension(code: LinearCode) -> bool:
    mk = code.m * code.k
    if code.n < mk:
        return False
    return trace_dimension(code) == mk


def max_trace_dim_by_codeword_scan(code: LinearCode, cap: int = ENUMERATION_CAP) -> bool:
    """True iff no nonzero codeword has identically zero trace."""
    t = code.tower
    words = codewords(code, cap)
    next(words)
    return all(any(t.trace(x) for x in w) for w in words)


def trace_kernel_meets_trivially(code: LinearCode) -> bool:
    """Decide whether C meets the kernel of the trace map only in zero.

    Works in GF(q)^(nm): C is expanded to its GF(q)-span and intersected
    with the kernel of the coordinate-wise trace by a dimension count.
    """
    t = code.tower
    F, m, n = t.top, t.m, code.n
    c_rows = []
    for g in code.generator.data:
        for i in range(m):
            word = [F.mul(t.q**i, x) for x in g]
            c_rows.append([c for x in word for c in t.coordinates(x)])
    functional = Matrix(t.base, 1, m, (tuple(t.trace(t.q**i) for i in range(m)),))
    local = kernel(functional).data
    k_rows = []
    for j in range(n):
        for v in local:
            row = [0] * (n * m)
            row[j * m : (j + 1) * m] = v
            k_rows.append(row)
    width = n * m
    dim_c = rank(Matrix.from_rows(t.base, c_rows, width))
    dim_k = len(k_rows)
    dim_sum = rank(Matrix.from_rows(t.base, c_rows + k_rows, width))
    return dim_c + dim_k == dim_sum


def delsarte_check(code: LinearCode) -> bool:
    """Compare the dual of tr(C) with the subfield subcode of the dual of C."""
    return trace_code(code).dual() == subfield_subcode(dual(code))


def alternant_code(tower: FieldTower, k: int, support: Sequence[int], multiplier: Sequence[int]) -> SubfieldCode:
    """A_k(x, a) as the dual of the trace code of GRS_k(x, a)."""
    return trace_code(generalized_reed_solomon(tower, k, support, multiplier)).dual()


def alternant_code_by_restriction(
    tower: FieldTower, k: int, support: Sequence[int], multiplier: Sequence[int]
) -> SubfieldCode:
    """A_k(x, a) as the subfield subcode of the dual of GRS_k(x, a)."""
    return subfield_subcode(dual(generalized_reed_solomon(tower, k, support, multiplier)))


class TraceColumns:
    """Per-column lookup of trace vectors for fast multiplier sweeps.

    Column j of tr(C_a) depends only on a_j: it is the vector of
    tr(alpha^i a_j g_rj) over rows r and basis powers i.  The trace
    dimension of C_a is the rank of the n selected column vectors.
    """

    def __init__(self, code: LinearCode):
        t = code.tower
        F = t.top
        self.code = code
        self.target = code.m * code.k
        self.empty = Span(t.base)
        betas = [t.q**i for i in range(t.m)]
        cols = code.generator.transpose().data if code.k else ((),) * code.n
        self.table = []
        for col in cols:
            per_a = [None]
            for a in range(1, t.Q):
                vec = [t.trace(F.mul(b, F.mul(a, g))) for g in col for b in betas]
                per_a.append(self.empty.pack(vec))
            self.table.append(per_a)

    def dimension(self, multiplier: Sequence[int]) -> int:
        span = self.empty
        for col, a in zip(self.table, multiplier):
            span = span.insert(col[a])
        return span.dim


def trace_dimension_profile(
    code: LinearCode, cap: int = MULTIPLIER_CAP, use_symmetry: bool = True
) -> Counter:
    """Number of multipliers a giving each value of dim tr(C_a).

    Sweeps all of (GF(q^m)*)^n column by column, merging partial
    multipliers whose trace columns span the same subspace.  With
    ``use_symmetry`` the first multiplier entry is fixed to 1 and counts
    are scaled by q^m - 1: C_{ca} = c C_a = C_a for every nonzero scalar c.
    """
    Q = code.tower.Q
    n = code.n
    _check_cap((Q - 1) ** n, cap, "multiplier enumeration")
    cols = TraceColumns(code)
    states = {(): (cols.empty, 1)}
    weight = 1
    for j, per_a in enumerate(cols.table):
        choices = [1] if (use_symmetry and j == 0) else range(1, Q)
        if use_symmetry and j == 0:
            weight = Q - 1
        new: dict = {}
        for span, count in states.values():
            if span.dim == cols.target:
                _merge(new, span, count * len(choices))
                continue
            for a in choices:
                _merge(new, span.insert(per_a[a]), count)
        states = new
    profile = Counter()
    for span, count in states.values():
        profile[span.dim] += count * weight
    return profile


def _merge(states: dict, span: Span, count: int) -> None:
    key = span.key
    if key in states:
        states[key] = (span, states[key][1] + count)
    else:
        states[key] = (span, count)


def all_multipliers(tower: FieldTower, n: int):
    return itertools.product(range(1, tower.Q), repeat=n)


# -- file format ------------------------------------------------------------


def format_subfield_code(code: SubfieldCode) -> str:
    t = code.tower
    lines = [f"{t.spec} n={code.n} k={code.k} subfield=true"]
    lines += [" ".join(str(x) for x in r) for r in code.generator.data]
    return "\n".join(lines) + "\n"


def parse_subfield_code(text: str) -> SubfieldCode:
    lines = text.splitlines()
    if not lines:
        raise CodeFileError("empty code file")
    hdr = parse_header(lines[0])
    if hdr.get("subfield") != "true":
        raise CodeFileError("missing subfield=true marker")
    try:
        p, s, m, n, k = (int(hdr[key]) for key in ("p", "s", "m", "n", "k"))
    except (KeyError, ValueError) as exc:
        raise CodeFileError(f"bad header field: {exc}") from None
    tower = field_tower(p, s, m)
    rows = parse_matrix_lines(lines[1:], n, k)
    try:
        M = Matrix.from_rows(tower.base, rows, n)
    except ValueError as exc:
        raise CodeFileError(str(exc)) from None
    if rank(M) != k:
        raise CodeFileError("generator rows are dependent")
    return SubfieldCode(tower, M)
