"""Exact arithmetic in a finite field tower GF(p) < GF(q) < GF(q^m).

Every element is an integer code.  An element of an extension of degree d
over a subfield of size b with power-basis coordinates (c_0, ..., c_{d-1})
has code sum(code(c_i) * b**i); the prime field uses residues.  The full
code of any element is therefore the base-p digit string of its coordinate
vector over GF(p), so addition is digit-wise at every level.

Arithmetic is done on the integer codes by the ``GF`` level objects.  The
``Element`` wrapper is for callers who want operator syntax.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from maxtrace.errors import CapExceededError, FieldMismatchError

SIZE_CAP = 2**32
# Fields up to this size get full multiplication / addition tables.
TABLE_LIMIT = 256
TRACE_TABLE_LIMIT = 2**12


class Level(enum.IntEnum):
    PRIME = 0
    BASE = 1
    TOP = 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _digits(code: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        code, r = divmod(code, base)
        out.append(r)
    return out


def _undigits(digits, base: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * base + c
    return code


class GF:
    """One level of a tower.

    ``sub`` is the field this one is built over (None for the prime field)
    and ``modulus`` lists the low coefficients (as ``sub`` codes) of the monic
    defining polynomial.  All methods take and return integer codes.
    """

    def __init__(self, p: int, sub: GF | None = None, modulus: tuple[int, ...] = ()):
        self.p = p
        self.sub = sub
        self.modulus = tuple(modulus)
        if sub is None:
            self.degree = 1
            self.size = p
            self.prime_degree = 1
        else:
            self.degree = len(self.modulus)
            self.size = sub.size**self.degree
            self.prime_degree = sub.prime_degree * self.degree
        self.tower: FieldTower | None = None
        self.level: Level | None = None
        self._mul_table: list[list[int]] | None = None
        self._add_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None
        self._neg_table: list[int] | None = None

    def __repr__(self) -> str:
        if self.sub is None:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.prime_degree})"

    def __reduce__(self):
        # Keep pickled levels pointing at the canonical tower instance.
        if self.tower is not None:
            return (_tower_level, (self.tower.p, self.tower.s, self.tower.m, int(self.level)))
        return object.__reduce__(self)

    # -- tables -----------------------------------------------------------

    def _build_tables(self) -> None:
        n = self.size
        self._mul_table = [[self._mul_slow(a, b) for b in range(n)] for a in range(n)]
        if self.p != 2:
            self._add_table = [[self._add_slow(a, b) for b in range(n)] for a in range(n)]
        self._neg_table = [self._neg_slow(a) for a in range(n)]
        inv = [0] * n
        for a in range(1, n):
            inv[a] = self._inv_slow(a)
        self._inv_table = inv

    def _ensure_tables(self) -> bool:
        if self._mul_table is not None:
            return True
        if self.size > TABLE_LIMIT:
            return False
        self._build_tables()
        return True

    @property
    def mul_table(self) -> list[list[int]] | None:
        self._ensure_tables()
        return self._mul_table

    @property
    def add_table(self) -> list[list[int]] | None:
        """None when addition is XOR (p = 2) or the field is too large."""
        self._ensure_tables()
        return self._add_table

    # -- arithmetic ---------------------------------------------------------

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def _neg_slow(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, place = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((p - x) % p) * place
            place *= p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        sub = self.sub
        if sub is None:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        d, base = self.degree, sub.size
        prod = _poly_mul(sub, _digits(a, base, d), _digits(b, base, d))
        return _undigits(_poly_mod(sub, prod, self.modulus), base)

    def _inv_slow(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        sub = self.sub
        if sub is None:
            return pow(a, -1, self.p)
        base = sub.size
        f = list(self.modulus) + [1]
        u = _poly_inverse(sub, _digits(a, base, self.degree), f)
        u = u + [0] * (self.degree - len(u))
        return _undigits(u, base)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._ensure_tables():
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self._ensure_tables():
            return self._neg_table[a]
        return self._neg_slow(a)

    def sub_(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._ensure_tables():
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._ensure_tables():
            return self._inv_table[a]
        return self._inv_slow(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def coordinates(self, a: int) -> list[int]:
        """Power-basis coordinates over ``sub`` (as ``sub`` codes)."""
        if self.sub is None:
            return [a]
        return _digits(a, self.sub.size, self.degree)

    def elements(self) -> range:
        return range(self.size)

    def nonzero(self) -> range:
        return range(1, self.size)


# -- polynomials over a GF level (lists of codes, low degree first) ---------


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(F: GF, f, g) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == 0:
            continue
        for j, y in enumerate(g):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _poly_mod(F: GF, f, low: tuple[int, ...]) -> list[int]:
    """Reduce f modulo the monic polynomial X^d + sum(low[i] X^i)."""
    d = len(low)
    r = list(f)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c == 0:
            continue
        r[i] = 0
        for t in range(d):
            if low[t]:
                r[i - d + t] = F.sub_(r[i - d + t], F.mul(c, low[t]))
    r = r[:d]
    return r + [0] * (d - len(r))


def _poly_divmod(F: GF, f, g) -> tuple[list[int], list[int]]:
    f = _trim(list(f))
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(g[-1])
    q = [0] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        shift = len(f) - len(g)
        c = F.mul(f[-1], lead_inv)
        q[shift] = c
        for i, y in enumerate(g):
            f[i + shift] = F.sub_(f[i + shift], F.mul(c, y))
        _trim(f)
    return _trim(q), f


def _poly_sub(F: GF, f, g) -> list[int]:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([F.sub_(x, y) for x, y in zip(f, g)])


def _poly_inverse(F: GF, a, f) -> list[int]:
    """Inverse of a modulo f via the extended Euclidean algorithm."""
    r0, r1 = _trim(list(f)), _trim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(F, s0, _poly_mul(F, q, s1) if q and s1 else [])
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo the defining polynomial")
    c = F.inv(r0[0])
    return [F.mul(c, x) for x in s0]


def _monic_polys(F: GF, degree: int):
    """Monic polynomials of a degree, in increasing order of their code."""
    for code in range(F.size**degree):
        yield _digits(code, F.size, degree) + [1]


def is_irreducible(F: GF, f) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f) / 2."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for deg in range(1, d // 2 + 1):
        for g in _monic_polys(F, deg):
            if not _poly_divmod(F, f, g)[1]:
                return False
    return True


def canonical_irreducible(F: GF, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree in code order.

    Returns the low coefficients (the leading 1 is implicit).
    """
    for f in _monic_polys(F, degree):
        if is_irreducible(F, f):
            return tuple(f[:-1])
    raise ValueError(f"no irreducible polynomial of degree {degree} over {F}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldTower:
    """The chain GF(p) < GF(q) < GF(q^m) with q = p^s.

    Build with :func:`field_tower`; equal parameters give the same object.
    """

    p: int
    s: int
    m: int
    prime: GF
    base: GF
    top: GF

    @property
    def q(self) -> int:
        return self.base.size

    @property
    def Q(self) -> int:
        return self.top.size

    @property
    def poly_q(self) -> tuple[int, ...]:
        """Coefficients of the defining polynomial of GF(q), low to high."""
        return self.base.modulus + (1,) if self.base.sub is not None else (0, 1)

    @property
    def poly_qm(self) -> tuple[int, ...]:
        return self.top.modulus + (1,)

    def __repr__(self) -> str:
        return f"FieldTower({self.spec})"

    def __reduce__(self):
        return (field_tower, (self.p, self.s, self.m))

    @property
    def spec(self) -> str:
        return f"p={self.p} s={self.s} m={self.m}"

    def field(self, level: Level) -> GF:
        return (self.prime, self.base, self.top)[level]

    def element(self, code: int, level: Level = Level.TOP) -> Element:
        return Element(self.field(level), code)

    @functools.cached_property
    def _trace_cache(self) -> dict[int, int] | list[int]:
        if self.top.size <= TRACE_TABLE_LIMIT:
            return [self._trace_power_sum(x) for x in range(self.top.size)]
        return {}

    def _trace_power_sum(self, x: int) -> int:
        top, q = self.top, self.q
        acc, y = x, x
        for _ in range(self.m - 1):
            y = top.pow(y, q)
            acc = top.add(acc, y)
        if acc >= q:
            raise AssertionError(f"trace of {x} left the subfield: {acc}")
        return acc

    def trace(self, x: int) -> int:
        """Relative trace GF(q^m) -> GF(q) on codes: sum of x^(q^i), i < m.

        The value lies in GF(q), whose embedded code in GF(q^m) is the
        same integer, so the result is directly a GF(q) code.
        """
        cache = self._trace_cache
        if isinstance(cache, list):
            return cache[x]
        if x not in cache:
            cache[x] = self._trace_power_sum(x)
        return cache[x]

    def coordinates(self, x: int) -> list[int]:
        """Coordinates of a top-level code over GF(q) in the power basis."""
        return _digits(x, self.q, self.m)

    def embed(self, c: int) -> int:
        """GF(q) code -> its code in GF(q^m) (identical integer)."""
        return c


@functools.lru_cache(maxsize=None)
def field_tower(p: int, s: int = 1, m: int = 1) -> FieldTower:
    """Canonical tower GF(p) < GF(p^s) < GF(p^(s*m))."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if s < 1 or m < 1:
        raise ValueError(f"extension degrees must be positive (s={s}, m={m})")
    if p ** (s * m) > SIZE_CAP:
        raise CapExceededError(f"field size {p}^{s * m} exceeds cap {SIZE_CAP}")
    prime = GF(p)
    base = GF(p, prime, canonical_irreducible(prime, s)) if s > 1 else GF(p)
    top = GF(p, base, canonical_irreducible(base, m))
    tower = FieldTower(p, s, m, prime, base, top)
    for level, F in zip(Level, (prime, base, top)):
        F.tower = tower
        F.level = level
    return tower


def _tower_level(p: int, s: int, m: int, level: int) -> GF:
    return field_tower(p, s, m).field(Level(level))


def parse_field_spec(text: str) -> FieldTower:
    """Parse the text form ``p=<p> s=<s> m=<m>``."""
    params = dict(tok.split("=", 1) for tok in text.split())
    try:
        return field_tower(int(params["p"]), int(params["s"]), int(params["m"]))
    except KeyError as exc:
        raise ValueError(f"field spec {text!r} is missing {exc}") from None


@dataclass(frozen=True)
class Element:
    """A field element with operator syntax; ``code`` is its integer encoding."""

    field: GF
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.size:
            raise ValueError(f"code {self.code} out of range for {self.field}")

    @property
    def tower(self) -> FieldTower | None:
        return self.field.tower

    @property
    def level(self) -> Level | None:
        return self.field.level

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element) or other.field is not self.field:
            raise FieldMismatchError(f"cannot combine {self.field!r} with {getattr(other, 'field', other)!r}")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.field, self.field.sub_(self.code, other.code))

    def __mul__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.field, self.field.mul(self.code, other.code))

    def __truediv__(self, other: Element) -> Element:
        return self * other.inverse()

    def __neg__(self) -> Element:
        return Element(self.field, self.field.neg(self.code))

    def __pow__(self, e: int) -> Element:
        return Element(self.field, self.field.pow(self.code, e))

    def inverse(self) -> Element:
        return Element(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __str__(self) -> str:
        return str(self.code)


def add(x: Element, y: Element) -> Element:
    return x + y


def mul(x: Element, y: Element) -> Element:
    return x * y


def neg(x: Element) -> Element:
    return -x


def inv(x: Element) -> Element:
    return x.inverse()


def trace_to_subfield(x: Element) -> Element:
    tower = x.tower
    if tower is None or x.level != Level.TOP:
        raise FieldMismatchError("trace is defined on the top level of a tower")
    return Element(tower.base, tower.trace(x.code))


def all_elements(F: GF):
    return (Element(F, c) for c in range(F.size))


__all__ = [
    "Element",
    "FieldTower",
    "GF",
    "Level",
    "add",
    "all_elements",
    "canonical_irreducible",
    "field_tower",
    "inv",
    "is_irreducible",
    "is_prime",
    "mul",
    "neg",
    "parse_field_spec",
    "trace_to_subfield",
]
