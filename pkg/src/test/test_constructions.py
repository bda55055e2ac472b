"""
测试确定性构造：每个构造的性质都用通用操作重新验证
"""
import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

import math

import numpy as np
import pytest

from src.applications import count_sum_product, trace_obstruction, trace_product_covers, trace_profile
from src.characters.characters import double_char_sum, magnitude
from src.constructions import CONSTRUCTIONS, build, construction_to_json
from src.errors import BadParameters, TooSmallPrime
from src.experiment.reports import headline
from src.field.field_core import Subset


def test_intro_ap():
    nc = build("intro_ap", 10007)
    assert len(nc["C"]) == 11 and nc["C"] == nc["D"]
    observed = magnitude(double_char_sum(nc.ctx, nc.char, nc["C"], nc["D"]))
    assert observed >= 0.99 * 121
    assert len(build("intro_ap", 101)["C"]) == 2
    with pytest.raises(TooSmallPrime):
        build("intro_ap", 97)
    with pytest.raises(BadParameters):
        build("intro_ap", 10007, 2)


@pytest.mark.parametrize("p, r", [(3, 4), (2, 6)])
def test_subfield_tight(p, r):
    nc = build("subfield_tight", p, r)
    q = p ** r
    assert len(nc["C"]) == len(nc["D"]) == math.isqrt(q)
    s = double_char_sum(nc.ctx, nc.char, nc["C"], nc["D"])
    assert s.is_integer() and abs(s.integer_value()) == q
    target = math.sqrt(len(nc["C"]) * len(nc["D"]) * q)
    assert magnitude(s) / target == pytest.approx(1.0, abs=1e-9)
    assert not nc.char.trivial


def test_subfield_tight_needs_even_degree():
    with pytest.raises(BadParameters):
        build("subfield_tight", 3, 3)


def test_remark1():
    nc = build("remark1", 101, 2)
    ctx = nc.ctx
    assert nc["C"].elems == (0, 1)
    assert len(nc["D"]) == 2 * 101
    assert set(ctx.trace_many(nc["D"].array).tolist()) <= {0, 1}
    rng = np.random.default_rng(5)
    for _ in range(20):
        size = int(rng.integers(1, len(nc["D"]) + 1))
        u_set = Subset.of(ctx, rng.choice(nc["D"].array, size=size, replace=False).tolist())
        observed = magnitude(double_char_sum(ctx, nc.char, nc["C"], u_set))
        assert observed >= 0.99 * len(nc["C"]) * len(u_set)


@pytest.mark.parametrize("p, sizes, residues", [(3, (3, 9), {1}), (5, (10, 50), {1, 4})])
def test_remark3(p, sizes, residues):
    nc = build("remark3", p, 4)
    assert (len(nc["C"]), len(nc["D"])) == sizes
    profile = trace_profile(nc.ctx, nc["C"], nc["D"])
    assert set(profile.support) <= residues
    assert profile.total == sizes[0] * sizes[1]
    covers, missing = trace_product_covers(nc.ctx, nc["C"], nc["D"])
    assert not covers and 0 in missing


def test_remark3_parameters():
    with pytest.raises(BadParameters):
        build("remark3", 3, 2)
    with pytest.raises(BadParameters):
        build("remark3", 2, 4)


def test_sec4_affine():
    nc = build("sec4_affine", 5, 4)
    assert len(nc["C"]) == 5 and len(nc["D"]) == 125
    assert len(nc["A"]) == len(nc["B"]) == 250
    sets = (nc["A"], nc["B"], nc["C"], nc["D"])
    assert count_sum_product(nc.ctx, *sets).n == 0
    assert count_sum_product(nc.ctx, *sets, algorithm="brute").n == 0
    with pytest.raises(BadParameters):
        build("sec4_affine", 3, 4)


def test_sec4_trace_interval_prime_field():
    nc = build("sec4_trace_interval", 211, 1)
    sets = (nc["A"], nc["B"], nc["C"], nc["D"])
    assert nc["C"].elems == (0, 1)
    assert len(nc["A"]) == 104
    assert trace_obstruction(nc.ctx, *sets)[0]
    assert count_sum_product(nc.ctx, *sets, algorithm="brute").n == 0
    with pytest.raises(TooSmallPrime):
        build("sec4_trace_interval", 199, 1)


def test_sec4_trace_interval_extension():
    nc = build("sec4_trace_interval", 1009, 2)
    assert len(nc["A"]) == 499 * 1009
    assert len(nc["C"]) == 4
    disjoint, tr_sum, tr_cd = trace_obstruction(nc.ctx, nc["A"], nc["B"], nc["C"], nc["D"])
    assert disjoint and max(tr_cd) == 9 and min(tr_sum) == 12


def test_intro_sumproduct_optimal():
    nc = build("intro_sumproduct_optimal", 13)
    assert nc["A"].elems == (1, 2, 3, 10, 11, 12)
    assert len(nc["B"]) == 6
    sets = (nc["A"], nc["B"], nc["C"], nc["D"])
    assert count_sum_product(nc.ctx, *sets, algorithm="brute").n == 0
    assert math.prod(len(s) for s in sets) == 468
    with pytest.raises(BadParameters):
        build("intro_sumproduct_optimal", 7)


def test_constructions_are_deterministic():
    first = construction_to_json(build("remark3", 5, 4))
    second = construction_to_json(build("remark3", 5, 4))
    assert first == second
    assert first["sizes"] == {"C": 10, "D": 50}
    assert first["sets"]["C"]["elems"] == sorted(first["sets"]["C"]["elems"])


def test_unknown_construction():
    with pytest.raises(BadParameters):
        build("no_such_thing", 5)


@pytest.mark.parametrize("name, p, r", [
    ("intro_ap", 10007, 1),
    ("subfield_tight", 3, 4),
    ("remark1", 101, 2),
    ("remark3", 5, 4),
    ("sec4_affine", 5, 4),
    ("sec4_trace_interval", 211, 1),
    ("intro_sumproduct_optimal", 13, 1),
])
def test_headline_holds(name, p, r):
    assert name in CONSTRUCTIONS
    row = headline(build(name, p, r))
    assert row["construction"] == name
    assert row["holds"] is True


if __name__ == "__main__":
    print("=" * 50)
    print("开始测试构造模块")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-v"]))
