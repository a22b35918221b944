"""Exact and sampled values of P_C, full-rank constants and the random
alternant experiment."""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from maxtrace.bounds import defect_bound
from maxtrace.codes import LinearCode, sum_code
from maxtrace.gf import FieldTower, field_tower
from maxtrace.tracedim import MULTIPLIER_CAP, TraceColumns, alternant_code, trace_dimension_profile

RNG_ALGORITHM = "mt19937/python-random"
BLOCK_SIZE = 4096


@dataclass(frozen=True)
class RngSpec:
    """Seed plus generator name; block streams are keyed by block index."""

    seed: int
    algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.algorithm != RNG_ALGORITHM:
            raise ValueError(f"unsupported RNG algorithm {self.algorithm!r}")

    def stream(self, index: int = 0) -> random.Random:
        digest = hashlib.sha256(f"{self.seed}:{index}".encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass(frozen=True)
class ProbabilityResult:
    kind: str  # "exact" or "monte-carlo"
    trials: int
    successes: int
    seed: int | None = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)


def exact_pc(code: LinearCode, cap: int = MULTIPLIER_CAP) -> ProbabilityResult:
    """P_C over all (q^m - 1)^n multipliers."""
    total = (code.tower.Q - 1) ** code.n
    target = code.m * code.k
    if code.n < target:
        return ProbabilityResult("exact", total, 0)
    profile = trace_dimension_profile(code, cap)
    return ProbabilityResult("exact", total, profile[target])


def random_multiplier(tower: FieldTower, n: int, rng: random.Random) -> list[int]:
    return [rng.randrange(1, tower.Q) for _ in range(n)]


def random_support(tower: FieldTower, n: int, rng: random.Random) -> list[int]:
    """Uniform injective n-tuple of field elements (partial Fisher-Yates)."""
    Q = tower.Q
    if n > Q:
        raise ValueError(f"support of length {n} does not fit in GF({Q})")
    pool = list(range(Q))
    for i in range(n):
        j = rng.randrange(i, Q)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:n]


def _blocks(trials: int) -> list[tuple[int, int]]:
    return [(b, min(BLOCK_SIZE, trials - b * BLOCK_SIZE)) for b in range(math.ceil(trials / BLOCK_SIZE))]


def _mc_block(code: LinearCode, rng: RngSpec, block: int, count: int) -> int:
    cols = TraceColumns(code)
    r = rng.stream(block)
    hits = 0
    for _ in range(count):
        if cols.dimension(random_multiplier(code.tower, code.n, r)) == cols.target:
            hits += 1
    return hits


def monte_carlo_pc(code: LinearCode, trials: int, rng: RngSpec, workers: int = 1) -> ProbabilityResult:
    """Estimate P_C from uniformly sampled multipliers.

    Trials are cut into fixed blocks with one stream each, so the result does
    not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    blocks = _blocks(trials)
    if code.n < code.m * code.k:
        return ProbabilityResult("monte-carlo", trials, 0, rng.seed)
    if workers <= 1:
        hits = sum(_mc_block(code, rng, b, c) for b, c in blocks)
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_mc_block, code, rng, b, c) for b, c in blocks]
            hits = sum(f.result() for f in futures)
    return ProbabilityResult("monte-carlo", trials, hits, rng.seed)


# -- full-rank constants ----------------------------------------------------


def s1(n: int, q: int) -> float:
    """Probability that a uniform n x n matrix over GF(q) is invertible."""
    _check_nq(n, q)
    out = 1.0
    for i in range(1, n + 1):
        out *= 1.0 - q ** (-i)
    return out


def s2_exact(n: int, q: int) -> Fraction:
    """Probability that n uniform nonzero vectors of GF(q)^n are independent."""
    _check_nq(n, q)
    out = Fraction(1)
    for j in range(n):
        out *= Fraction(q**n - q**j, q**n - 1)
    return out


def s2(n: int, q: int) -> float:
    return float(s2_exact(n, q))


def s_limit(q: int) -> float:
    """The infinite product of (1 - q^-i), stopped once a factor no longer moves it."""
    if q < 2:
        raise ValueError("q must be at least 2")
    out, i = 1.0, 1
    while True:
        step = out * q ** (-i)
        if step < 1e-16 * out:
            return out
        out -= step
        i += 1


def _check_nq(n: int, q: int) -> None:
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")


def product_rule_holds(c1: LinearCode, c2: LinearCode, cap: int = MULTIPLIER_CAP) -> bool:
    """Whether P of the direct sum equals the product of the two P values."""
    return exact_pc(sum_code(c1, c2), cap).value == exact_pc(c1, cap).value * exact_pc(c2, cap).value


# -- random alternant codes -------------------------------------------------


@dataclass
class AlternantReport:
    q: int
    m: int
    k: int
    n: int
    trials: int
    seed: int
    dimensions: dict[int, int] = field(default_factory=dict)

    @property
    def minimal(self) -> int:
        return max(self.n - self.m * self.k, 0)

    @property
    def successes(self) -> int:
        return self.dimensions.get(self.minimal, 0)

    @property
    def frequency(self) -> float:
        return self.successes / self.trials

    @property
    def bound(self) -> Fraction | None:
        """Guaranteed frequency; None on the boundary n = mk where it is not asserted."""
        if self.n <= self.m * self.k:
            return None
        return defect_bound(self.q, self.m, self.k, 0, self.n)

    @property
    def min_dimension(self) -> int:
        return min(self.dimensions)


def random_alternant_experiment(q: int, m: int, k: int, n: int, trials: int, rng: RngSpec) -> AlternantReport:
    """Sample support and multiplier independently; tally dim A_k(x, a)."""
    p, s = _prime_power(q)
    tower = field_tower(p, s, m)
    if not (m * k <= n <= tower.Q and k >= 1):
        raise ValueError(f"need mk <= n <= q^m, got m={m} k={k} n={n}")
    if trials < 1:
        raise ValueError("trials must be positive")
    report = AlternantReport(q, m, k, n, trials, rng.seed)
    for b, count in _blocks(trials):
        r = rng.stream(b)
        for _ in range(count):
            x = random_support(tower, n, r)
            a = random_multiplier(tower, n, r)
            dim = alternant_code(tower, k, x, a).k
            report.dimensions[dim] = report.dimensions.get(dim, 0) + 1
    return report


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            s, r = 0, q
            while r % p == 0:
                r //= p
                s += 1
            if r != 1:
                break
            return p, s
    raise ValueError(f"q={q} is not a prime power")

