"""Linear codes over the top level GF(q^m) of a tower.

Codes are row spaces of full-rank generator matrices.  Parameters that need
enumeration (minimum distance, weight distribution, generalized weights) are
computed by brute force and refuse to run past an explicit cap.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from maxtrace.errors import CapExceededError, CodeFileError, FieldMismatchError
from maxtrace.gf import FieldTower, field_tower
from maxtrace.linalg import Matrix, kernel, rank, row_basis

ENUMERATION_CAP = 2**24


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] code over ``tower.top`` given by a k x n generator.

    ``known_distance`` records a minimum distance that is known from the
    construction; otherwise :attr:`d` enumerates codewords on first access.
    """

    tower: FieldTower
    generator: Matrix
    known_distance: int | None = None

    def __post_init__(self):
        if self.generator.field is not self.tower.top:
            raise FieldMismatchError("generator must live in the top field of the tower")
        if rank(self.generator) != self.generator.nrows:
            raise ValueError("generator matrix does not have full row rank")

    @classmethod
    def from_rows(cls, tower: FieldTower, rows: Sequence[Sequence[int]], n: int | None = None) -> LinearCode:
        return cls(tower, Matrix.from_rows(tower.top, rows, n))

    @classmethod
    def span(cls, tower: FieldTower, rows: Sequence[Sequence[int]], n: int | None = None) -> LinearCode:
        """Code spanned by arbitrary (possibly dependent) rows."""
        return cls(tower, row_basis(Matrix.from_rows(tower.top, rows, n)))

    @classmethod
    def zero(cls, tower: FieldTower, n: int) -> LinearCode:
        return cls(tower, Matrix.zeros(tower.top, 0, n))

    @classmethod
    def full_space(cls, tower: FieldTower, n: int) -> LinearCode:
        return cls(tower, Matrix.identity(tower.top, n), known_distance=1 if n else None)

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def m(self) -> int:
        return self.tower.m

    @functools.cached_property
    def d(self) -> int:
        if self.known_distance is not None:
            return self.known_distance
        return minimum_distance(self)

    @property
    def h(self) -> int:
        """Singleton defect n + 1 - k - d."""
        return self.n + 1 - self.k - self.d

    @functools.cached_property
    def canonical(self) -> tuple[tuple[int, ...], ...]:
        return row_basis(self.generator).data

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.tower is other.tower and self.n == other.n and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.tower.spec, self.n, self.canonical))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.tower.Q}))"

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        F = self.tower.top
        out = [0] * self.n
        for c, row in zip(message, self.generator.data):
            if c:
                out = [x if y == 0 else F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)


# -- checks on supports and multipliers -------------------------------------


def check_support(tower: FieldTower, support: Sequence[int]) -> tuple[int, ...]:
    xs = tuple(int(x) for x in support)
    if len(set(xs)) != len(xs):
        raise ValueError("support entries must be pairwise distinct")
    if any(not 0 <= x < tower.Q for x in xs):
        raise ValueError("support entry outside the field")
    return xs


def check_multiplier(tower: FieldTower, multiplier: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in multiplier)
    if any(not 0 < x < tower.Q for x in a):
        raise ValueError("multiplier entries must be nonzero field elements")
    return a


# -- constructors -----------------------------------------------------------


def reed_solomon(tower: FieldTower, k: int, support: Sequence[int]) -> LinearCode:
    """RS_k(x): rows x_j^i for i < k."""
    return generalized_reed_solomon(tower, k, support, [1] * len(support))


def generalized_reed_solomon(
    tower: FieldTower, k: int, support: Sequence[int], multiplier: Sequence[int]
) -> LinearCode:
    xs = check_support(tower, support)
    a = check_multiplier(tower, multiplier)
    n = len(xs)
    if len(a) != n:
        raise ValueError("support and multiplier lengths differ")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    F = tower.top
    rows = [tuple(F.mul(aj, F.pow(xj, i)) for xj, aj in zip(xs, a)) for i in range(k)]
    return LinearCode(tower, Matrix(F, k, n, tuple(rows)), known_distance=n - k + 1)


def repetition_code(tower: FieldTower, n: int) -> LinearCode:
    if n < 1:
        raise ValueError("repetition code needs n >= 1")
    return LinearCode(tower, Matrix(tower.top, 1, n, ((1,) * n,)), known_distance=n)


def sum_code(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Direct sum: codewords (x1, x2) with x1 in c1 and x2 in c2."""
    if c1.tower is not c2.tower:
        raise FieldMismatchError("sum of codes over different towers")
    rows = [r + (0,) * c2.n for r in c1.generator.data] + [(0,) * c1.n + r for r in c2.generator.data]
    G = Matrix(c1.tower.top, c1.k + c2.k, c1.n + c2.n, tuple(rows))
    d = None
    if c1.known_distance is not None and c2.known_distance is not None:
        d = min(_distance_or_inf(c1), _distance_or_inf(c2))
        if d == math.inf:
            d = None
    return LinearCode(c1.tower, G, known_distance=d)


def _distance_or_inf(c: LinearCode):
    return c.known_distance if c.k else math.inf


def scale(code: LinearCode, multiplier: Sequence[int]) -> LinearCode:
    """C_a: column j of the generator multiplied by a_j."""
    a = check_multiplier(code.tower, multiplier)
    if len(a) != code.n:
        raise ValueError("multiplier length does not match the code length")
    F = code.tower.top
    rows = tuple(tuple(F.mul(x, aj) for x, aj in zip(r, a)) for r in code.generator.data)
    return LinearCode(code.tower, Matrix(F, code.k, code.n, rows), known_distance=code.known_distance)


def counterexample_code(tower: FieldTower, k: int, support: Sequence[int] | None = None) -> LinearCode:
    """Length-mk code whose multiplied versions never reach trace dimension mk.

    The first k-1 rows are RS_{k-1} on the first n' = m(k-1) - 1 support
    points and zero elsewhere; the last row is x_j^(k-1) on all n points.
    ``support`` defaults to the codes 0, 1, ..., n-1.
    """
    q, m = tower.q, tower.m
    if m <= 2:
        raise ValueError("construction needs m > 2")
    if not 2 <= k or m * k > q**m:
        raise ValueError(f"need 2 <= k <= q^m / m, got k={k}")
    n = m * k
    n1 = m * (k - 1) - 1
    xs = check_support(tower, range(n) if support is None else support)
    if len(xs) != n:
        raise ValueError(f"support must have length {n}")
    if any(x == 0 for x in xs[n1:]):
        raise ValueError("the last m + 1 support entries must be nonzero")
    F = tower.top
    rows = [tuple(F.pow(x, i) for x in xs[:n1]) + (0,) * (n - n1) for i in range(k - 1)]
    rows.append(tuple(F.pow(x, k - 1) for x in xs))
    return LinearCode(tower, Matrix(F, k, n, tuple(rows)), known_distance=(m - 1) * (k - 1))


def dual(code: LinearCode) -> LinearCode:
    return LinearCode(code.tower, kernel(code.generator))


# -- enumeration ------------------------------------------------------------


def _check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise CapExceededError(f"{what}: {count} exceeds enumeration cap {cap}")


def codewords(code: LinearCode, cap: int = ENUMERATION_CAP) -> Iterator[tuple[int, ...]]:
    """All codewords, the zero word first."""
    Q = code.tower.Q
    _check_cap(Q**code.k, cap, "codeword enumeration")
    F = code.tower.top
    words = [(0,) * code.n]
    for row in code.generator.data:
        multiples = [tuple(F.mul(c, x) for x in row) for c in range(1, Q)]
        new = list(words)
        for w in words:
            for mrow in multiples:
                new.append(tuple(F.add(x, y) for x, y in zip(w, mrow)))
        words = new
    return iter(words)


def _weights(code: LinearCode, cap: int) -> list[int]:
    """Weight of every codeword, built row by row without storing words."""
    Q = code.tower.Q
    _check_cap(Q**code.k, cap, "codeword enumeration")
    F = code.tower.top
    n = code.n
    words: list[tuple[int, ...]] = [(0,) * n]
    counts = [0] * (n + 1)
    rows = code.generator.data
    if not rows:
        counts[0] = 1
        return counts
    for row in rows[:-1]:
        multiples = [tuple(F.mul(c, x) for x in row) for c in range(1, Q)]
        words = words + [tuple(F.add(x, y) for x, y in zip(w, mrow)) for w in words for mrow in multiples]
    last = [tuple(F.mul(c, x) for x in rows[-1]) for c in range(Q)]
    for w in words:
        for mrow in last:
            counts[sum(1 for x, y in zip(w, mrow) if x != F.neg(y))] += 1
    return counts


def minimum_distance(code: LinearCode, cap: int = ENUMERATION_CAP) -> int:
    """Minimum nonzero weight by enumeration; n + 1 for the zero code."""
    if code.k == 0:
        return code.n + 1
    counts = _weights(code, cap)
    return next(w for w in range(1, code.n + 1) if counts[w])


@dataclass(frozen=True)
class WeightDistribution:
    """Codeword counts B_0..B_n by Hamming weight."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    def __iter__(self):
        return iter(self.counts)


def weight_distribution(code: LinearCode, cap: int = ENUMERATION_CAP) -> WeightDistribution:
    return WeightDistribution(tuple(_weights(code, cap)))


def krawtchouk(j: int, i: int, n: int, Q: int) -> int:
    return sum((-1) ** s * (Q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s) for s in range(j + 1))


def macwilliams_transform(W: WeightDistribution, n: int, k: int, Q: int) -> WeightDistribution:
    """Weight distribution of the dual of an [n, k] code over a field of size Q."""
    if W.n != n:
        raise ValueError(f"distribution has length {W.n}, expected {n}")
    if W.total != Q**k or W[0] != 1:
        raise ValueError("distribution is not that of an [n, k] linear code")
    out = []
    for j in range(n + 1):
        val = Fraction(sum(W[i] * krawtchouk(j, i, n, Q) for i in range(n + 1)), Q**k)
        if val.denominator != 1 or val < 0:
            raise ValueError("MacWilliams transform is not integral; inconsistent input")
        out.append(int(val))
    return WeightDistribution(tuple(out))


# -- supports and generalized weights ---------------------------------------


def support_of(code: LinearCode) -> frozenset[int]:
    return frozenset(j for j in range(code.n) if any(r[j] for r in code.generator.data))


def _rref_coefficient_matrices(Q: int, i: int, k: int):
    """Every i x k matrix over a field of size Q in RREF with rank i."""
    for pivots in itertools.combinations(range(k), i):
        free_slots = [(r, c) for r in range(i) for c in range(pivots[r] + 1, k) if c not in pivots]
        for values in itertools.product(range(Q), repeat=len(free_slots)):
            mat = [[0] * k for _ in range(i)]
            for r, p in enumerate(pivots):
                mat[r][p] = 1
            for (r, c), v in zip(free_slots, values):
                mat[r][c] = v
            yield mat


def generalized_weight(code: LinearCode, i: int, cap: int = ENUMERATION_CAP) -> int:
    """d_i: smallest support of an i-dimensional subcode.

    Subcodes are enumerated once each through their RREF coefficient matrix
    with respect to the generator rows.
    """
    k = code.k
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= k={k}")
    Q = code.tower.Q
    _check_cap(Q ** (i * (k - i)) * math.comb(k, i), cap, "subspace enumeration")
    best = code.n
    for coeffs in _rref_coefficient_matrices(Q, i, k):
        supp = set()
        for c in coeffs:
            word = code.encode(c)
            supp.update(j for j, x in enumerate(word) if x)
        if len(supp) < best:
            best = len(supp)
    return best


# -- text file format -------------------------------------------------------


def format_code(code: LinearCode) -> str:
    t = code.tower
    lines = [f"{t.spec} n={code.n} k={code.k}"]
    lines += [" ".join(str(x) for x in r) for r in code.generator.data]
    return "\n".join(lines) + "\n"


def parse_header(line: str) -> dict[str, str]:
    try:
        return dict(tok.split("=", 1) for tok in line.split())
    except ValueError:
        raise CodeFileError(f"malformed header {line!r}") from None


def parse_matrix_lines(lines: list[str], n: int, k: int) -> list[list[int]]:
    rows = []
    for line in lines[:k]:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise CodeFileError(f"non-integer entry in row {line!r}") from None
        if len(row) != n:
            raise CodeFileError(f"row has {len(row)} entries, expected {n}")
        rows.append(row)
    if len(rows) != k or any(line.strip() for line in lines[k:]):
        raise CodeFileError(f"expected exactly {k} generator rows")
    return rows


def parse_code(text: str) -> LinearCode:
    lines = text.splitlines()
    if not lines:
        raise CodeFileError("empty code file")
    hdr = parse_header(lines[0])
    try:
        p, s, m, n, k = (int(hdr[key]) for key in ("p", "s", "m", "n", "k"))
    except (KeyError, ValueError) as exc:
        raise CodeFileError(f"bad header field: {exc}") from None
    if hdr.get("subfield", "false") == "true":
        raise CodeFileError("file holds a subfield code, not a code over GF(q^m)")
    tower = field_tower(p, s, m)
    rows = parse_matrix_lines(lines[1:], n, k)
    try:
        return LinearCode(tower, Matrix.from_rows(tower.top, rows, n))
    except ValueError as exc:
        raise CodeFileError(str(exc)) from None


def save_code(code: LinearCode, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_code(code))


def load_code(path) -> LinearCode:
    with open(path) as fh:
        return parse_code(fh.read())
