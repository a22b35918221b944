"""Exact values of lambda(C) and the lower bounds on P_C built from it.

lambda(C) is the average of q^(n - dim tr(C_a)) over all multipliers a.
It can be computed three ways, all in exact rationals:

* ``weight``: sum over w of B_w ((q-1)/(q^m-1))^w with B_w counting the
  codewords of the *dual* code by weight;
* ``average``: the multiplier average itself;
* ``ng``: a sum over column subsets of the generator, grouped by rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from maxtrace.codes import (
    ENUMERATION_CAP,
    LinearCode,
    WeightDistribution,
    dual,
    macwilliams_transform,
    weight_distribution,
)
from maxtrace.errors import CapExceededError, InvariantError
from maxtrace.linalg import Span
from maxtrace.tracedim import MULTIPLIER_CAP, trace_dimension_profile

DUAL_DIRECT_CAP = 2**16
SUBSET_MAX_N = 20

METHODS = ("weight", "average", "ng")


@dataclass(frozen=True)
class LambdaValue:
    value: Fraction
    method: str

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class SubmatrixRankTable:
    """counts[v][r]: number of k x v column submatrices of G with rank r."""

    n: int
    k: int
    counts: tuple[tuple[int, ...], ...]

    def __call__(self, v: int, r: int) -> int:
        if r > v:
            return 0
        return self.counts[v][r]


def dual_weight_distribution(
    code: LinearCode, direct_cap: int = DUAL_DIRECT_CAP, cap: int = ENUMERATION_CAP
) -> WeightDistribution:
    """Weight distribution of C^perp.

    Enumerates C^perp when it has at most ``direct_cap`` words, otherwise
    enumerates C and applies the MacWilliams identity.
    """
    Q = code.tower.Q
    if Q ** (code.n - code.k) <= direct_cap:
        return weight_distribution(dual(code), cap)
    if Q**code.k > cap:
        raise CapExceededError(f"neither C nor its dual can be enumerated within {cap} words")
    return macwilliams_transform(weight_distribution(code, cap), code.n, code.k, Q)


def lambda_from_dual_distribution(B: WeightDistribution, q: int, Q: int) -> Fraction:
    x = Fraction(q - 1, Q - 1)
    return sum((b * x**w for w, b in enumerate(B)), Fraction(0))


def lambda_weight_form(code: LinearCode, direct_cap: int = DUAL_DIRECT_CAP, cap: int = ENUMERATION_CAP) -> LambdaValue:
    B = dual_weight_distribution(code, direct_cap, cap)
    return LambdaValue(lambda_from_dual_distribution(B, code.q, code.tower.Q), "weight")


def lambda_average_form(code: LinearCode, cap: int = MULTIPLIER_CAP) -> LambdaValue:
    q, n = code.q, code.n
    profile = trace_dimension_profile(code, cap)
    total = (code.tower.Q - 1) ** n
    s = sum(count * Fraction(q) ** (n - dim) for dim, count in profile.items())
    return LambdaValue(s / total, "average")


def submatrix_rank_table(code: LinearCode, max_n: int = SUBSET_MAX_N) -> SubmatrixRankTable:
    """Count column subsets of the generator by size and rank.

    Subsets are grown one column at a time in lexicographic order, so each
    rank comes from extending the parent subset's span by one column.
    """
    n, k = code.n, code.k
    if n > max_n:
        raise CapExceededError(f"n={n} exceeds the subset enumeration limit {max_n}")
    F = code.tower.top
    empty = Span(F)
    cols = [empty.pack(c) for c in code.generator.transpose().data] if k else [empty.pack(())] * n
    counts = [[0] * (v + 1) for v in range(n + 1)]

    def grow(start: int, size: int, span: Span) -> None:
        counts[size][span.dim] += 1
        for j in range(start, n):
            grow(j + 1, size + 1, span.insert(cols[j]))

    grow(0, 0, empty)
    return SubmatrixRankTable(n, k, tuple(tuple(r) for r in counts))


def ng_inner_sum(table: SubmatrixRankTable, v: int, m: int, q: int) -> int:
    """sum over r of N(v, r) q^(m(v - r))."""
    return sum(table(v, r) * q ** (m * (v - r)) for r in range(v + 1))


def lambda_ng_form(code: LinearCode, max_n: int = SUBSET_MAX_N) -> LambdaValue:
    q, m, n = code.q, code.m, code.n
    Q = code.tower.Q
    if m < 2:
        raise ValueError("the subset-rank form needs q^m > q (m >= 2)")
    table = submatrix_rank_table(code, max_n)
    x = Fraction(q - 1, Q - q)
    s = sum((x**v * ng_inner_sum(table, v, m, q) for v in range(n + 1)), Fraction(0))
    return LambdaValue(Fraction(Q - q, Q - 1) ** n * s, "ng")


def compute_lambda(code: LinearCode, method: str = "weight") -> LambdaValue:
    if method == "weight":
        return lambda_weight_form(code)
    if method == "average":
        return lambda_average_form(code)
    if method == "ng":
        if code.m == 1:
            return lambda_weight_form(code)
        return lambda_ng_form(code)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def weight_rank_identity_holds(
    code: LinearCode,
    v: int,
    B: WeightDistribution | None = None,
    table: SubmatrixRankTable | None = None,
) -> bool:
    """sum_s C(n-s, v-s) B_s == sum_r N(v, r) q^(m(v-r)), B from C^perp."""
    n = code.n
    if not 0 <= v <= n:
        raise ValueError(f"v={v} outside [0, {n}]")
    if B is None:
        B = dual_weight_distribution(code)
    if table is None:
        table = submatrix_rank_table(code)
    left = sum(math.comb(n - s, v - s) * B[s] for s in range(v + 1))
    return left == ng_inner_sum(table, v, code.m, code.q)


def defect_bound(q: int, m: int, k: int, h: int, n: int) -> Fraction:
    """Lower bound 1 - (1 - q^-m(h+k)) / ((q-1) q^(n - m(h+k))) on P_C.

    Vacuous (possibly negative) when n < m(h+k).
    """
    if q < 2 or m < 1 or k < 0 or h < 0 or n < 0:
        raise ValueError("invalid parameters")
    e = m * (h + k)
    Fq = Fraction(q)
    return 1 - (1 - Fq ** (-e)) / ((q - 1) * Fq ** (n - e))


def ag_degree_bound(q: int, m: int, n: int, deg_g: int) -> Fraction:
    """The same bound with h + k replaced by deg(G) + 1, for C_L(D, G)."""
    if m <= 1:
        raise ValueError("need m > 1")
    if deg_g < 0 or m * (deg_g + 1) > n:
        raise ValueError(f"need 0 <= deg(G) <= n/m - 1, got deg(G)={deg_g}, n={n}, m={m}")
    return defect_bound(q, m, deg_g + 1, 0, n)


def pc_lower_bound_from_lambda(code: LinearCode, lam: Fraction) -> Fraction:
    """1 - D / ((q-1) q^(n-km)) where D = lam - q^(n-km)."""
    q = code.q
    floor = Fraction(q) ** (code.n - code.k * code.m)
    lam = Fraction(lam)
    if lam < floor:
        raise InvariantError(f"lambda={lam} is below its proven minimum {floor}")
    return 1 - (lam - floor) / ((q - 1) * floor)


def lambda_upper_bound(q: int, m: int, k: int, h: int, n: int) -> Fraction:
    """The bound q^(n-mk) + q^(mh) - q^(-mk) on lambda(C)."""
    Fq = Fraction(q)
    return Fq ** (n - m * k) + Fq ** (m * h) - Fq ** (-m * k)


def lambda_all(code: LinearCode) -> dict[str, LambdaValue]:
    """Every method that fits within its default cap."""
    out = {}
    for method in METHODS:
        try:
            out[method] = compute_lambda(code, method)
        except CapExceededError:
            continue
    return out
