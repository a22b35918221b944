"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line PASS/FAIL verdict with its runtime; the
verdicts are printed in the terminal summary (see conftest.py) and when
the module is run directly.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from battery import brute_distance, labelled_battery, random_grs, tiny_codes
from rank_tables import TABLES
from maxtrace.bounds import (
    defect_bound,
    dual_weight_distribution,
    lambda_average_form,
    lambda_ng_form,
    lambda_weight_form,
    submatrix_rank_table,
    weight_rank_identity_holds,
)
from maxtrace.codes import counterexample_code, repetition_code
from maxtrace.gf import field_tower
from maxtrace.linalg import rank_of_columns
from maxtrace.probability import (
    RngSpec,
    exact_pc,
    product_rule_holds,
    random_alternant_experiment,
    s1,
    s2,
    s2_exact,
    s_limit,
)
from maxtrace.tracedim import TraceColumns, all_multipliers, delsarte_check

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(num: int, title: str, limit: float):
    notes: list[str] = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS[num] = f"criterion {num:2d}: FAIL  {title} ({elapsed:.2f}s) - {type(exc).__name__}: {exc}"
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    extra = f"; {'; '.join(notes)}" if notes else ""
    verdict = "PASS" if ok else "FAIL"
    RESULTS[num] = f"criterion {num:2d}: {verdict}  {title} ({elapsed:.2f}s < {limit:g}s{'' if ok else ' exceeded'}{extra})"
    assert ok, RESULTS[num]


def _table_check(q: int) -> float:
    lim = s_limit(q)
    worst = 0.0
    for n, (t1, t2, diff) in TABLES[q].items():
        a = s1(n, q)
        worst = max(worst, abs(a - t1), abs(s2(n, q) - t2), abs((a - lim) - diff))
    assert worst <= 1e-12, f"max deviation {worst:.3g}"
    return worst


def test_criterion_01_full_rank_table_q2():
    with criterion(1, "S1/S2/S1-S(2) table for q=2", 1.0) as notes:
        assert sorted(TABLES[2]) == list(range(5, 55, 5))
        notes.append(f"max deviation {_table_check(2):.2g}")
        assert format(s1(10, 2), ".15g") == "0.289070298419749"


def test_criterion_02_full_rank_table_q3():
    with criterion(2, "S1/S2/S1-S(3) table for q=3", 1.0) as notes:
        assert sorted(TABLES[3]) == list(range(5, 35, 5))
        notes.append(f"max deviation {_table_check(3):.2g}")
        assert format(s1(5, 3), ".15g") == "0.561280381843718"


def _codes():
    return [c for _, c in labelled_battery()]


def test_criterion_03_lambda_three_way():
    with criterion(3, "lambda weight = ng = average on the battery", 300.0) as notes:
        codes = _codes()
        assert len(codes) >= 50
        averaged = 0
        for code in codes:
            assert code.q in (2, 3) and code.m in (2, 3) and code.n <= 8 and code.k <= 3
            w = lambda_weight_form(code).value
            assert w == lambda_ng_form(code).value, code
            if (code.tower.Q - 1) ** code.n <= 2**20:
                assert w == lambda_average_form(code).value, code
                averaged += 1
        notes.append(f"{len(codes)} codes, {averaged} with the average form")


def test_criterion_04_defect_bound():
    with criterion(4, "exact P_C >= defect bound when n >= m(k+h)", 600.0) as notes:
        checked = 0
        for code in _codes():
            q, m, k, h, n = code.q, code.m, code.k, code.h, code.n
            if n < m * (k + h):
                continue
            pc = exact_pc(code).value
            bound = defect_bound(q, m, k, h, n)
            assert pc >= bound, (code, pc, bound)
            checked += 1
        assert checked > 0
        notes.append(f"{checked} codes")


def test_criterion_05_repetition():
    with criterion(5, "P_C of the m-fold repetition code = S2(m,q)", 60.0):
        for q, m in [(2, 2), (2, 3), (3, 2)]:
            pc = exact_pc(repetition_code(field_tower(q, 1, m), m)).value
            assert pc == s2_exact(m, q), (q, m, pc)
        pc = exact_pc(repetition_code(field_tower(2, 1, 2), 2)).value
        assert pc == Fraction(2, 3)


def test_criterion_06_counterexample():
    with criterion(6, "C'(2,3,2): P_C = 0, d = 2, h = 3", 60.0) as notes:
        t = field_tower(2, 1, 3)
        code = counterexample_code(t, 2)
        res = exact_pc(code)
        assert res.trials == 117649 and res.successes == 0
        # unreduced sweep over every multiplier, no symmetry or merging
        cols = TraceColumns(code)
        assert all(cols.dimension(a) < cols.target for a in all_multipliers(t, code.n))
        d = brute_distance(code)
        assert d == 2 == (t.m - 1) * (2 - 1)
        assert code.n + 1 - code.k - d == 3 == t.m
        notes.append("117649 multipliers swept twice")


def test_criterion_07_sum_rule():
    with criterion(7, "P of a direct sum is the product of P values", 300.0) as notes:
        codes = tiny_codes(40, seed=707, max_multipliers=120)
        pairs = 0
        for c1, c2 in itertools.combinations(codes, 2):
            if c1.tower is not c2.tower:
                continue
            assert product_rule_holds(c1, c2), (c1, c2)
            pairs += 1
            if pairs == 12:
                break
        assert pairs >= 10
        notes.append(f"{pairs} pairs")


def test_criterion_08_delsarte():
    with criterion(8, "dual of trace code = subfield subcode of dual", 120.0) as notes:
        codes = _codes()
        for code in codes:
            assert delsarte_check(code), code
        notes.append(f"{len(codes)} codes")


def test_criterion_09_weight_rank_identity():
    with criterion(9, "dual weights vs column-subset ranks for every v", 300.0) as notes:
        codes = _codes()
        assert len(codes) >= 30
        for code in codes:
            B = dual_weight_distribution(code)
            table = submatrix_rank_table(code)
            for v in range(code.n + 1):
                assert weight_rank_identity_holds(code, v, B, table), (code, v)
        notes.append(f"{len(codes)} codes")


def test_criterion_10_random_alternant():
    with criterion(10, "random alternant q=2 m=4 k=2 n=16", 120.0) as notes:
        trials = 1000
        rep = random_alternant_experiment(2, 4, 2, 16, trials, RngSpec(1))
        bound = float(rep.bound)
        assert abs(bound - 0.99611) < 1e-5
        sigma = math.sqrt(bound * (1 - bound) / trials)
        assert rep.min_dimension >= 8
        assert rep.frequency >= 0.98
        assert rep.frequency >= bound - 4 * sigma
        notes.append(f"frequency {rep.frequency:.3f}, bound {bound:.5f}, dims {dict(sorted(rep.dimensions.items()))}")


def test_criterion_11_mds_structure():
    with criterion(11, "GRS codes are MDS; k x (k+h) minors have rank k", 300.0) as notes:
        labelled = labelled_battery()
        grs = [c for label, c in labelled if label == "grs"]
        # a few more GRS codes over larger fields
        rng = random.Random(1111)
        for t in (field_tower(2, 1, 4), field_tower(5, 1, 2)):
            for _ in range(3):
                n = rng.randint(3, 6)
                k = rng.randint(1, 3)
                grs.append(random_grs(t, n, k, rng))
        for code in grs:
            assert brute_distance(code) == code.n - code.k + 1, code
        subsets = 0
        for _, code in labelled:
            width = code.k + code.h
            for cols in itertools.combinations(range(code.n), width):
                assert rank_of_columns(code.generator, cols) == code.k, (code, cols)
                subsets += 1
        notes.append(f"{len(grs)} GRS codes, {subsets} column subsets")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    for num in sorted(RESULTS):
        print(RESULTS[num])
    sys.exit(1 if failed else 0)
