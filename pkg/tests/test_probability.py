import math
import random
from fractions import Fraction

import pytest

from battery import battery, random_code, tiny_codes
from rank_tables import TABLES
from maxtrace.bounds import defect_bound
from maxtrace.codes import LinearCode, counterexample_code, repetition_code, scale, sum_code
from maxtrace.errors import CapExceededError
from maxtrace.gf import field_tower
from maxtrace.probability import (
    BLOCK_SIZE,
    RngSpec,
    exact_pc,
    monte_carlo_pc,
    product_rule_holds,
    random_alternant_experiment,
    random_multiplier,
    random_support,
    s1,
    s2,
    s2_exact,
    s_limit,
)
from maxtrace.tracedim import all_multipliers, has_max_trace_dimension

GF4 = field_tower(2, 1, 2)
GF8 = field_tower(2, 1, 3)


def naive_pc(code):
    hits = total = 0
    for a in all_multipliers(code.tower, code.n):
        total += 1
        hits += has_max_trace_dimension(scale(code, a))
    return Fraction(hits, total)


def test_exact_pc_repetition_gf4():
    rep = repetition_code(GF4, 2)
    res = exact_pc(rep)
    assert (res.successes, res.trials) == (6, 9)
    assert res.value == Fraction(2, 3) == s2_exact(2, 2) == naive_pc(rep)


def test_exact_pc_short_code_is_zero():
    code = LinearCode.from_rows(GF8, [[1, 2, 3, 4, 5], [0, 1, 2, 3, 4]])
    assert exact_pc(code).value == 0


def test_exact_pc_cap():
    with pytest.raises(CapExceededError):
        exact_pc(repetition_code(GF8, 9), cap=7**8)


def test_exact_pc_against_naive():
    for code in tiny_codes(30, seed=31):
        res = exact_pc(code)
        assert res.value == naive_pc(code)
        assert res.trials == (code.tower.Q - 1) ** code.n


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_repetition_pc_is_s2(q, m):
    rep = repetition_code(field_tower(q, 1, m), m)
    assert exact_pc(rep).value == s2_exact(m, q)


def test_scale_invariance():
    rng = random.Random(5)
    for code in tiny_codes(10, seed=32):
        a = random_multiplier(code.tower, code.n, rng)
        assert exact_pc(scale(code, a)).value == exact_pc(code).value


def test_monte_carlo_repetition_seed_1():
    res = monte_carlo_pc(repetition_code(GF4, 2), 10_000, RngSpec(1))
    assert res.kind == "monte-carlo" and res.trials == 10_000
    assert abs(res.estimate - 2 / 3) < 0.02


def test_monte_carlo_replay_and_workers():
    rep = repetition_code(GF4, 2)
    trials = 2 * BLOCK_SIZE + 17
    a = monte_carlo_pc(rep, trials, RngSpec(7))
    b = monte_carlo_pc(rep, trials, RngSpec(7))
    assert a == b
    assert monte_carlo_pc(rep, trials, RngSpec(7), workers=2) == a


def test_monte_carlo_within_4_sigma_on_battery():
    trials = 800
    for i, code in enumerate(battery()):
        p = float(exact_pc(code).value)
        res = monte_carlo_pc(code, trials, RngSpec(1000 + i))
        sigma = math.sqrt(p * (1 - p) / trials)
        if sigma == 0:
            assert res.estimate == p
        else:
            assert abs(res.estimate - p) <= 4 * sigma, (code, p, res)


def test_rng_spec_validation():
    with pytest.raises(ValueError):
        RngSpec(-1)
    with pytest.raises(ValueError):
        RngSpec(1, "xorshift")
    with pytest.raises(ValueError):
        monte_carlo_pc(repetition_code(GF4, 2), 0, RngSpec(1))


def test_random_support_is_injective_and_uniform():
    rng = random.Random(3)
    counts = {}
    for _ in range(6000):
        x = tuple(random_support(GF4, 2, rng))
        assert len(set(x)) == 2
        counts[x] = counts.get(x, 0) + 1
    assert len(counts) == 12
    assert all(abs(c - 500) < 4 * math.sqrt(500) for c in counts.values())
    with pytest.raises(ValueError):
        random_support(GF4, 5, rng)


@pytest.mark.parametrize("q", [2, 3])
def test_s_values_match_tables(q):
    lim = s_limit(q)
    for n, (t1, t2, diff) in TABLES[q].items():
        assert abs(s1(n, q) - t1) < 1e-12
        assert abs(s2(n, q) - t2) < 1e-12
        assert abs((s1(n, q) - lim) - diff) < 1e-12


def test_s_value_examples():
    assert s1(5, 2) == pytest.approx(0.298004150390625, abs=1e-15)
    assert s1(1, 2) == 0.5
    for q in (2, 3, 4, 5, 7):
        assert s2(1, q) == 1 and s2_exact(1, q) == 1
    # independent oracle: count invertible 2x2 matrices over GF(3)
    good = sum(1 for a in range(81) if ((a % 3) * (a // 27) - (a // 3 % 3) * (a // 9 % 3)) % 3)
    assert s1(2, 3) == pytest.approx(good / 81, abs=1e-15)
    # ordered independent pairs of nonzero vectors: 8 * 6 out of 8 * 8
    assert s2_exact(2, 3) == Fraction(8 * 6, 8 * 8)
    with pytest.raises(ValueError):
        s1(0, 2)
    with pytest.raises(ValueError):
        s_limit(1)


def test_s2_exceeds_s1_and_limit_below():
    for q in (2, 3):
        lim = s_limit(q)
        for n in range(1, 30):
            assert s2(n, q) >= s1(n, q) >= lim


def test_product_rule_examples():
    rep = repetition_code(GF4, 2)
    empty = LinearCode.zero(GF4, 0)
    assert exact_pc(empty).value == 1
    assert product_rule_holds(rep, empty)
    assert exact_pc(sum_code(rep, rep)).value == Fraction(4, 9)
    assert product_rule_holds(rep, rep)


def test_product_rule_on_random_pairs():
    codes = tiny_codes(20, seed=33, max_multipliers=60)
    pairs = list(zip(codes[::2], codes[1::2]))
    checked = 0
    for c1, c2 in pairs:
        if c1.tower is not c2.tower:
            continue
        assert product_rule_holds(c1, c2)
        checked += 1
    rng = random.Random(34)
    while checked < 10:
        t = rng.choice([GF4, field_tower(3, 1, 2)])
        c1 = random_code(t, rng.randint(1, 3), 1, rng)
        c2 = random_code(t, rng.randint(1, 3), 1, rng)
        assert product_rule_holds(c1, c2)
        checked += 1


def test_counterexample_pc_zero():
    res = exact_pc(counterexample_code(GF8, 2))
    assert res.value == 0 and res.trials == 7**6


def test_alternant_boundary_case():
    rep = random_alternant_experiment(2, 2, 1, 2, 50, RngSpec(3))
    assert rep.minimal == 0
    assert rep.bound is None
    assert sum(rep.dimensions.values()) == 50
    assert 0 <= rep.frequency <= 1


def test_alternant_small_case():
    rep = random_alternant_experiment(2, 3, 1, 8, 200, RngSpec(4))
    assert rep.min_dimension >= 5
    assert rep.bound == defect_bound(2, 3, 1, 0, 8)
    again = random_alternant_experiment(2, 3, 1, 8, 200, RngSpec(4))
    assert again.dimensions == rep.dimensions


@pytest.mark.parametrize("args", [(2, 2, 2, 3), (2, 2, 1, 5), (6, 2, 1, 4), (2, 2, 0, 3)])
def test_alternant_rejects(args):
    with pytest.raises(ValueError):
        random_alternant_experiment(*args, 10, RngSpec(1))
