import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxtrace.gf import field_tower
from maxtrace.linalg import Matrix, Span, kernel, rank, rank_of_columns, rref, row_space_equal, solve

FIELDS = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2)]


def _field(spec):
    return field_tower(*spec).top


@st.composite
def matrices(draw):
    F = _field(draw(st.sampled_from(FIELDS)))
    r = draw(st.integers(0, 5))
    c = draw(st.integers(1, 6))
    rows = draw(st.lists(st.lists(st.integers(0, F.size - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(F, rows, c)


def test_identity_and_zero():
    F = _field((2, 1, 2))
    I = Matrix.identity(F, 3)
    R, r, piv = rref(I)
    assert R == I and r == 3 and piv == [0, 1, 2]
    Z = Matrix.zeros(F, 2, 4)
    R, r, piv = rref(Z)
    assert R == Z and r == 0 and piv == []


def test_scalar_multiple_rows_gf4():
    F = _field((2, 1, 2))
    M = Matrix.from_rows(F, [[1, 1, 1, 1], [2, 2, 2, 2]])
    assert rank(M) == 1


def test_kernel_examples():
    F = _field((2, 1, 3))
    assert kernel(Matrix.identity(F, 4)).nrows == 0
    assert kernel(Matrix.zeros(F, 1, 5)).nrows == 5
    rng = random.Random(5)
    while True:
        M = Matrix.from_rows(F, [[rng.randrange(8) for _ in range(5)] for _ in range(2)])
        if rank(M) == 2:
            break
    K = kernel(M)
    assert K.nrows == 3 and rank(K) == 3
    assert (M @ K.T).is_zero()


def test_rank_of_columns_vandermonde():
    t = field_tower(2, 1, 3)
    F = t.top
    xs = [0, 1, 2, 5, 7]
    M = Matrix.from_rows(F, [[1] * 5, xs])
    assert rank_of_columns(M, []) == 0
    assert rank_of_columns(M, range(5)) == rank(M) == 2
    for i, j in itertools.combinations(range(5), 2):
        assert rank_of_columns(M, [i, j]) == 2
    with pytest.raises(ValueError):
        rank_of_columns(M, [1, 1])
    with pytest.raises(IndexError):
        rank_of_columns(M, [5])


def test_solve():
    F = _field((3, 1, 2))
    M = Matrix.from_rows(F, [[1, 2, 0], [0, 1, 1]])
    x = solve(M, [4, 5])
    assert (M @ Matrix.from_rows(F, [x]).T).data == ((4,), (5,))
    assert solve(Matrix.from_rows(F, [[1, 0], [1, 0]]), [1, 2]) is None


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_properties(M):
    R, r, piv = rref(M)
    assert r == rank(M.T)
    assert rref(R)[0] == R
    assert piv == sorted(set(piv))
    assert all(any(row) for row in R.data[:r]) and not any(any(row) for row in R.data[r:])
    K = kernel(M)
    assert K.nrows == M.ncols - r
    assert rank(K) == K.nrows
    if K.nrows and M.nrows:
        assert (M @ K.T).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_column_rank_subadditive(M, data):
    cols = list(range(M.ncols))
    a = data.draw(st.lists(st.sampled_from(cols), unique=True))
    b = data.draw(st.lists(st.sampled_from(cols), unique=True))
    union = sorted(set(a) | set(b))
    assert rank_of_columns(M, union) <= rank_of_columns(M, a) + rank_of_columns(M, b)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_span_agrees_with_rref(M):
    span = Span(M.field)
    for row in M.data:
        span = span.insert(span.pack(row))
    assert span.dim == rank(M)
    # order of insertion does not change the canonical key
    other = Span(M.field)
    for row in reversed(M.data):
        other = other.insert(other.pack(row))
    assert other.key == span.key
    for row in M.data:
        assert span.contains(span.pack(row))


def test_row_space_equal():
    F = _field((3, 1, 2))
    A = Matrix.from_rows(F, [[1, 0, 2], [0, 1, 1]])
    B = Matrix.from_rows(F, [[1, 1, 0], [2, 1, 1]])
    assert row_space_equal(A, A.vstack(B)) == (rank(A.vstack(B)) == 2)
    C = Matrix.from_rows(F, [[1, 1, 0]])
    assert not row_space_equal(A, C)
