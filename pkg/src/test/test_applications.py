"""
测试迹乘积计数、和积方程计数及相关尺寸条件
"""
import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

import math

import numpy as np
import pytest

from src.applications import (
    check_thm3_condition,
    check_thm4_condition,
    count_sum_product,
    inversion_closed_sample_sizes,
    legacy_sumproduct_condition,
    legacy_trace_conditions,
    sum_product_chain_report,
    thm3_improvement_windows,
    thm4_improvement_window,
    trace_deviation_report,
    trace_obstruction,
    trace_product_covers,
    trace_profile,
    trace_profile_via_characters,
)
from src.errors import TooLarge
from src.field.field_core import Subset, make_field
from src.subset_select.bounds import BoundParams, m_of_d


def random_subset(ctx, rng, lo, hi):
    size = int(rng.integers(lo, hi + 1))
    return Subset.of(ctx, rng.choice(ctx.q, size=size, replace=False).tolist())


# ----------------------------------------------------------------------
# 迹乘积
# ----------------------------------------------------------------------

def test_profile_of_zero_set():
    ctx = make_field(5, 2)
    u_set = Subset.of(ctx, [1, 6, 7, 20])
    profile = trace_profile(ctx, Subset.of(ctx, [0]), u_set)
    assert profile.counts == (4, 0, 0, 0, 0)
    assert profile.support == [0]
    covers, missing = trace_product_covers(ctx, Subset.of(ctx, [0]), u_set)
    assert not covers and missing == [1, 2, 3, 4]


def test_profile_of_full_field():
    ctx = make_field(3, 2)
    full = Subset.full(ctx)
    profile = trace_profile(ctx, full, full)
    q, p = ctx.q, ctx.p
    # c = 0 贡献 q 个迹 0；c ≠ 0 时 cu 取遍 F_q，每个迹值 q/p 次
    assert profile.counts == (q + (q - 1) * q // p,) + ((q - 1) * q // p,) * (p - 1)
    assert profile.total == q * q
    assert trace_product_covers(ctx, full, full) == (True, [])


def test_profile_via_characters_matches_direct():
    rng = np.random.default_rng(8)
    for p, r in [(3, 3), (2, 5), (5, 2)]:
        ctx = make_field(p, r)
        for _ in range(5):
            c_set = random_subset(ctx, rng, 1, 10)
            u_set = random_subset(ctx, rng, 1, 10)
            assert trace_profile_via_characters(ctx, c_set, u_set) == trace_profile(ctx, c_set, u_set)


def test_covering_is_monotone_and_empty_sets():
    ctx = make_field(3, 4)
    rng = np.random.default_rng(21)
    c_set = Subset.of(ctx, [1])
    d_set = Subset.full(ctx).nonzero()
    covers, missing = trace_product_covers(ctx, c_set, d_set)
    assert covers and missing == []
    for _ in range(10):
        bigger = c_set.union(random_subset(ctx, rng, 1, 10))
        assert trace_product_covers(ctx, bigger, d_set)[0]
        assert trace_product_covers(ctx, bigger, Subset.full(ctx))[0]
    # 缩小后不再覆盖的反例：C = {1}，D 的迹全为 0
    kernel = Subset.of(ctx, [x for x in range(1, ctx.q) if ctx.trace(x) == 0])
    assert trace_product_covers(ctx, c_set, kernel) == (False, [1, 2])
    empty = trace_profile(ctx, Subset.empty(ctx), d_set)
    assert empty.total == 0 and empty.support == []


def test_thm3_condition_is_strict():
    p, q, d = 3, 3 ** 40, 10 ** 15
    threshold = p ** 4 * q / (d * m_of_d(q, d))
    assert threshold > 10
    c = math.floor(threshold)
    assert not check_thm3_condition(c, d, p, q)
    assert check_thm3_condition(c + 1, d, p, q)
    assert not check_thm3_condition(c + 1, d, p, q, BoundParams(lam=2.0))


def test_legacy_trace_conditions():
    assert legacy_trace_conditions(9, 9, 3, 9) == (False, True)
    assert legacy_trace_conditions(10, 9, 3, 9) == (True, True)
    assert legacy_trace_conditions(2, 10, 3, 9) == (False, False)


def test_trace_deviation_report():
    ctx = make_field(3, 3)
    u_set = Subset.of(ctx, [1, 2, 5, 11, 19])
    report = trace_deviation_report(ctx, Subset.of(ctx, [0]), u_set, d_size=10)
    assert report["max_deviation"] == pytest.approx(5 * 2 / 3)
    assert report["covers"] is False
    assert report["sizeC"] == 1 and report["sizeU"] == 5 and report["sizeD"] == 10
    assert report["within_bound"] == (report["max_deviation"] <= report["deviation_bound"])
    k2 = trace_deviation_report(ctx, Subset.of(ctx, [0]), u_set, d_size=10, k=2)
    assert k2["sufficient_sizeC"] == pytest.approx(report["sufficient_sizeC"] * (3 / 2) ** 4)


def test_thm3_improvement_windows():
    first, second = thm3_improvement_windows(3, 3 ** 200, 1.0)
    assert first.nonempty and second.nonempty
    assert first.lo < second.lo and second.hi < first.hi
    for window in thm3_improvement_windows(3, 3 ** 200, 1e30):
        assert not window.nonempty


def test_inversion_closed_sample_sizes():
    sizes = inversion_closed_sample_sizes(3, 3 ** 20)
    assert sizes.alpha == pytest.approx(3 / 20 + 11 / 13)
    log_q = math.log(3 ** 20)
    assert sizes.d_size == math.ceil(float(3 ** 20) ** (9 / 13) * log_q ** (7 / 26))
    assert sizes.c_size > 3 ** 4


# ----------------------------------------------------------------------
# 和积方程
# ----------------------------------------------------------------------

def test_full_field_count():
    ctx = make_field(3, 2)
    full = Subset.full(ctx)
    for algorithm in ("brute", "convolution"):
        result = count_sum_product(ctx, full, full, full, full, algorithm)
        assert result.n == ctx.q ** 3
        assert result.algorithm == algorithm


def test_algorithms_agree():
    rng = np.random.default_rng(31)
    fields = [make_field(2, 5), make_field(3, 3), make_field(13, 1)]
    for i in range(50):
        ctx = fields[i % 3]
        sets = [random_subset(ctx, rng, 0, 12) for _ in range(4)]
        brute = count_sum_product(ctx, *sets, algorithm="brute").n
        assert brute == count_sum_product(ctx, *sets).n
        direct = sum(1 for a in sets[0] for b in sets[1] for c in sets[2] for d in sets[3]
                     if ctx.add(a, b) == ctx.mul(c, d)) if i < 5 else brute
        assert brute == direct


def test_brute_guard_and_unknown_algorithm():
    ctx = make_field(101, 1)
    full = Subset.full(ctx)
    with pytest.raises(TooLarge):
        count_sum_product(ctx, full, full, full, full, "brute")
    with pytest.raises(ValueError):
        count_sum_product(ctx, full, full, full, full, "magic")


def test_sum_product_conditions():
    assert check_thm4_condition(81, 81, 81, 81, 81)
    assert not check_thm4_condition(81, 81, 81, 81, 81, BoundParams(lam=2.0))
    assert legacy_sumproduct_condition(9, 9, 9, 9, 9)
    assert not legacy_sumproduct_condition(3, 3, 3, 3, 9)


def test_thm4_improvement_window():
    ab, d_window = thm4_improvement_window(3 ** 200, 3 ** 150, 1.0)
    assert ab.nonempty and d_window.nonempty
    assert ab.hi == pytest.approx(float(3 ** 200) ** 2)
    ab, d_window = thm4_improvement_window(3 ** 200, 3 ** 150, 1e40)
    assert not ab.nonempty and not d_window.nonempty


def test_trace_obstruction():
    ctx = make_field(5, 2)
    ones = Subset.of(ctx, [x for x in range(ctx.q) if ctx.trace(x) == 1])
    zero = Subset.of(ctx, [0])
    disjoint, tr_sum, tr_cd = trace_obstruction(ctx, ones, ones, zero, Subset.full(ctx))
    assert disjoint and tr_sum == [2] and tr_cd == [0]
    assert count_sum_product(ctx, ones, ones, zero, Subset.full(ctx)).n == 0
    assert not trace_obstruction(ctx, ones, ones, ones, Subset.full(ctx))[0]


def test_chain_report_is_ordered():
    ctx = make_field(3, 3)
    rng = np.random.default_rng(12)
    for _ in range(5):
        a_set, b_set, c_set, u_set = (random_subset(ctx, rng, 2, 12) for _ in range(4))
        for kappa in (1.0, 0.5):
            report = sum_product_chain_report(ctx, a_set, b_set, c_set, u_set, d_size=len(u_set) + 3,
                                              params=BoundParams(kappa=kappa))
            assert report["N_star"] == count_sum_product(ctx, a_set, b_set, c_set, u_set).n
            assert report["deviation"] <= report["character_expansion"] + 1e-6
            assert report["double_sum_step"] <= report["cauchy_schwarz_step"] * (1 + 1e-9)
            assert report["combined_bound"] == pytest.approx(report["cauchy_schwarz_step"])
            assert report["max_double_sum"] <= len(c_set) * len(u_set) + 1e-9


if __name__ == "__main__":
    print("=" * 50)
    print("开始测试应用模块")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-v"]))
