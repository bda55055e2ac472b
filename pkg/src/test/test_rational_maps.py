"""
测试有理函数的约化、求值与非线性条件的判定
"""
import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

import numpy as np
import pytest

from src.errors import InvalidElement, PoleInSet, ZeroDenominator
from src.field.field_core import Subset, make_field, quadratic_residues
from src.rational_maps.rational_maps import (
    POLE,
    condition2_status,
    eval_many,
    eval_map,
    image,
    maps_into,
    parse_rational_map,
    reduce,
)


def _poly_at(ctx, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def _assert_witness(ctx, f, witness):
    """逐点验证 f(x) = a(g(x)^p - g(x)) + bx + c"""
    for x in range(ctx.q):
        g = _poly_at(ctx, witness.g, x)
        rhs = ctx.add(ctx.add(ctx.mul(witness.a, ctx.sub(ctx.pow(g, ctx.p), g)), ctx.mul(witness.b, x)), witness.c)
        assert eval_map(ctx, f, x) == rhs


def test_reduce_cancels_common_factor():
    ctx = make_field(7, 1)
    f = reduce(ctx, [6, 0, 1], [6, 1])  # (X^2 - 1)/(X - 1)
    assert f.num == (1, 1) and f.den == (1,) and f.k == 1
    assert f.is_polynomial


def test_reduce_normalizes_denominator():
    ctx = make_field(7, 1)
    f = reduce(ctx, [2], [0, 2])
    assert f.num == (1,) and f.den == (0, 1)
    zero = reduce(ctx, [0, 0], [3, 1])
    assert zero.num == () and zero.den == (1,) and zero.k == 0
    with pytest.raises(ZeroDenominator):
        reduce(ctx, [1], [0])
    with pytest.raises(InvalidElement):
        reduce(ctx, [7], [1])


def test_parse_and_describe():
    ctx = make_field(3, 2)
    f = parse_rational_map(ctx, "1 / 0,1")
    assert f.k == 1
    assert parse_rational_map(ctx, f.describe()) == f
    g = parse_rational_map(ctx, "0,0,1")
    assert g.k == 2 and g.is_polynomial
    with pytest.raises(ValueError):
        parse_rational_map(ctx, "1/2/3")


def test_eval_and_poles():
    ctx = make_field(3, 2)
    inv = parse_rational_map(ctx, "1 / 0,1")
    assert eval_map(ctx, inv, 0) is POLE
    for x in range(1, ctx.q):
        assert eval_map(ctx, inv, x) == ctx.inv(x)
    values, poles = eval_many(ctx, inv, list(range(ctx.q)))
    assert poles.tolist() == [True] + [False] * (ctx.q - 1)
    assert values[1:].tolist() == [ctx.inv(x) for x in range(1, ctx.q)]


def test_maps_into_and_image():
    ctx = make_field(13, 1)
    inv = parse_rational_map(ctx, "1 / 0,1")
    nonzero = Subset.full(ctx).nonzero()
    assert maps_into(ctx, inv, nonzero)
    assert not maps_into(ctx, inv, Subset.full(ctx))
    assert not maps_into(ctx, inv, Subset.of(ctx, [2, 3]))
    assert image(ctx, inv, Subset.of(ctx, [2, 7])).elems == (2, 7)
    with pytest.raises(PoleInSet):
        image(ctx, inv, Subset.of(ctx, [0, 1]))


def test_whitelist():
    ctx = make_field(3, 2)
    assert condition2_status(ctx, parse_rational_map(ctx, "1 / 0,1")).kind == "whitelisted"
    assert condition2_status(ctx, parse_rational_map(ctx, "0,0,1")).kind == "whitelisted"


def test_linear_maps_violate():
    ctx = make_field(5, 2)
    for text in ["0,1", "3,2", "4"]:
        f = parse_rational_map(ctx, text)
        status = condition2_status(ctx, f)
        assert status.violates
        _assert_witness(ctx, f, status.witness)


def test_artin_schreier_maps_violate():
    # X^3 = (X^3 - X) + X over F_9
    ctx = make_field(3, 2)
    f = parse_rational_map(ctx, "0,0,0,1")
    status = condition2_status(ctx, f)
    assert status.violates
    _assert_witness(ctx, f, status.witness)

    # X^2 in characteristic 2 = (X^2 - X) + X
    ctx2 = make_field(2, 2)
    f2 = parse_rational_map(ctx2, "0,0,1")
    status2 = condition2_status(ctx2, f2)
    assert status2.violates
    _assert_witness(ctx2, f2, status2.witness)

    # 带二次项的 g：a((gX^2)^p - gX^2) + X，p = 3，g 取 F_9 中的生成元
    x = ctx.generator
    num = [0] * 7
    num[6] = ctx.frobenius(x)
    num[2] = ctx.neg(x)
    num[1] = 1
    f3 = reduce(ctx, num)
    status3 = condition2_status(ctx, f3)
    assert status3.violates
    _assert_witness(ctx, f3, status3.witness)


def test_unknown_cases():
    ctx = make_field(3, 2)
    # 支撑不在 {0, 1, 2, p, 2p} 内
    status = condition2_status(ctx, parse_rational_map(ctx, "0,0,0,0,0,1"))
    assert status.kind == "unknown" and status.reason
    # 非多项式且不在白名单
    status = condition2_status(ctx, parse_rational_map(ctx, "1 / 1,1"))
    assert status.kind == "unknown"
    assert not status.violates


def test_reduce_is_idempotent_and_preserves_values():
    ctx = make_field(7, 1)
    raw = [([6, 0, 1], [6, 1]), ([2, 3, 1], [0, 2]), ([1, 0, 0, 1], [1, 1]), ([0, 0], [3, 1])]
    for num, den in raw:
        f = reduce(ctx, num, den)
        assert reduce(ctx, f.num, f.den) == f
        for x in range(ctx.q):
            d = _poly_at(ctx, den, x)
            if d and _poly_at(ctx, f.den, x):
                assert eval_map(ctx, f, x) == ctx.div(_poly_at(ctx, num, x), d)


def test_removable_singularity():
    # (X^2 - 1)/(X - 1) = X + 1，在 1 处取 2
    ctx = make_field(7, 1)
    f = reduce(ctx, [6, 0, 1], [6, 1])
    assert eval_map(ctx, f, 1) == 2


def test_inversion_is_involution():
    ctx = make_field(3, 4)
    inv = parse_rational_map(ctx, "1 / 0,1")
    rng = np.random.default_rng(3)
    for _ in range(20):
        t_set = Subset.of(ctx, rng.choice(np.arange(1, ctx.q), size=int(rng.integers(1, 30)), replace=False).tolist())
        assert image(ctx, inv, image(ctx, inv, t_set)) == t_set


def test_squaring_collapses_sign_pairs():
    ctx = make_field(13, 1)
    square = parse_rational_map(ctx, "0,0,1")
    for a in range(1, ctx.q):
        assert len(image(ctx, square, Subset.of(ctx, [a, ctx.neg(a)]))) == 1


def test_maps_into_implies_image_inside():
    ctx = make_field(13, 1)
    square = parse_rational_map(ctx, "0,0,1")
    residues = quadratic_residues(13)
    assert maps_into(ctx, square, residues)
    assert image(ctx, square, residues).issubset(residues)
    rng = np.random.default_rng(11)
    inv = parse_rational_map(ctx, "1 / 0,1")
    for _ in range(50):
        d_set = Subset.of(ctx, rng.choice(np.arange(1, ctx.q), size=int(rng.integers(1, 12)), replace=False).tolist())
        for f in (square, inv):
            if maps_into(ctx, f, d_set):
                assert image(ctx, f, d_set).issubset(d_set)


@pytest.mark.parametrize("text", ["0,1,0,1", "1,0,1 / 0,1", "1 / 0,1"])
def test_image_size_at_least_t_over_k(text):
    ctx = make_field(2, 5)
    f = parse_rational_map(ctx, text)
    rng = np.random.default_rng(f.k)
    for _ in range(50):
        t_set = Subset.of(ctx, rng.choice(np.arange(1, ctx.q), size=int(rng.integers(1, ctx.q)), replace=False).tolist())
        assert len(image(ctx, f, t_set)) * f.k >= len(t_set)


def test_cubic_in_characteristic_two_is_unknown():
    # X^3 + X over F_32
    ctx = make_field(2, 5)
    status = condition2_status(ctx, parse_rational_map(ctx, "0,1,0,1"))
    assert status.kind == "unknown"



if __name__ == "__main__":
    print("=" * 50)
    print("开始测试有理函数模块")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-v"]))
