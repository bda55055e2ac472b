"""
测试有限域构造、标量/向量运算、迹与对偶基
"""
import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

import itertools

import numpy as np
import pytest

from src.errors import (
    BadParameters,
    DegreeMismatch,
    EvenCharacteristic,
    FieldMismatch,
    InvalidElement,
    NotABasis,
    NotPrime,
    Reducible,
)
from src.field import prime_poly
from src.field.field_core import (
    Subset,
    dual_basis,
    dump_subset,
    load_subset,
    make_field,
    power_basis,
    quadratic_residues,
    subfield,
    trace,
    trace_product_counts,
    trace_product_histograms,
)


def test_is_prime():
    primes = [p for p in range(60) if prime_poly.is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert prime_poly.is_prime(10007)
    assert not prime_poly.is_prime(10007 * 10009)


def test_least_irreducible_modulus():
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    for p, r in [(2, 3), (2, 6), (3, 4), (5, 4), (7, 3)]:
        ctx = make_field(p, r)
        assert len(ctx.modulus) == r + 1 and ctx.modulus[-1] == 1
        assert prime_poly.is_irreducible(ctx.modulus, p)
        # 字典序更小的首一多项式都可约
        for cand in prime_poly.iter_monic(p, r):
            if cand == ctx.modulus:
                break
            assert not prime_poly.is_irreducible(cand, p)


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(Reducible):
        make_field(2, 2, [1, 0, 1])
    with pytest.raises(DegreeMismatch):
        make_field(3, 2, [1, 1])
    with pytest.raises(DegreeMismatch):
        make_field(3, 0)
    # 输入错误同时是 ValueError
    with pytest.raises(ValueError):
        make_field(9, 1)


def test_field_axioms_exhaustive():
    for p, r in [(2, 3), (3, 2), (5, 1)]:
        ctx = make_field(p, r)
        elems = range(ctx.q)
        for a in elems:
            assert ctx.add(a, 0) == a
            assert ctx.mul(a, 1) == a
            assert ctx.add(a, ctx.neg(a)) == 0
            if a:
                assert ctx.mul(a, ctx.inv(a)) == 1
        for a, b, c in itertools.product(elems, repeat=3):
            assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
            assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


@pytest.mark.parametrize("p, r", [(5, 4), (2, 9), (23, 2), (3, 5)])
def test_encoding_and_inverse_exhaustive(p, r):
    ctx = make_field(p, r)
    assert ctx.q <= 625
    seen = set()
    for x in range(ctx.q):
        digits = ctx.decode(x)
        assert len(digits) == r and all(0 <= c < p for c in digits)
        assert ctx.encode(digits) == x
        seen.add(tuple(digits))
        if x:
            assert ctx.mul(x, ctx.inv(x)) == 1
    assert len(seen) == ctx.q
    nonzero = ctx.elements()[1:]
    assert (ctx.mul_many(nonzero, ctx.inv_many(nonzero)) == 1).all()



def test_inverse_of_zero():
    ctx = make_field(3, 2)
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_vectorized_matches_scalar():
    for p, r in [(3, 4), (2, 6), (11, 2)]:
        ctx = make_field(p, r)
        rng = np.random.default_rng(7)
        xs = rng.integers(0, ctx.q, size=200)
        ys = rng.integers(0, ctx.q, size=200)
        assert ctx.add_many(xs, ys).tolist() == [ctx.add(int(x), int(y)) for x, y in zip(xs, ys)]
        assert ctx.sub_many(xs, ys).tolist() == [ctx.sub(int(x), int(y)) for x, y in zip(xs, ys)]
        assert ctx.mul_many(xs, ys).tolist() == [ctx.mul(int(x), int(y)) for x, y in zip(xs, ys)]
        assert ctx.pow_many(xs, 5).tolist() == [ctx.pow(int(x), 5) for x in xs]
        assert ctx.trace_many(xs).tolist() == [ctx.trace(int(x)) for x in xs]
        nonzero = xs[xs != 0]
        assert ctx.inv_many(nonzero).tolist() == [ctx.inv(int(x)) for x in nonzero]


def test_multiplicative_group_order():
    ctx = make_field(3, 4)
    xs = ctx.elements()[1:]
    assert (ctx.pow_many(xs, ctx.q - 1) == 1).all()
    assert ctx.pow(ctx.generator, -1) == ctx.inv(ctx.generator)


def test_trace_fibers_have_size_q_over_p():
    for p, r in [(3, 4), (5, 4)]:
        ctx = make_field(p, r)
        fibers = np.bincount(ctx.trace_table, minlength=p)
        assert (fibers == ctx.q // p).all()


def test_trace_is_frobenius_sum():
    ctx = make_field(3, 4)
    for x in range(ctx.q):
        conj = 0
        for i in range(ctx.r):
            conj = ctx.add(conj, ctx.frobenius(x, i))
        # Tr(x) 落在素域内，编码就是其值
        assert conj == trace(ctx, x)
        assert ctx.trace(ctx.frobenius(x)) == ctx.trace(x)


def test_trace_products_bilinear_form():
    ctx = make_field(2, 6)
    rng = np.random.default_rng(3)
    xs = rng.integers(0, ctx.q, size=30)
    ys = rng.integers(0, ctx.q, size=40)
    table = ctx.trace_products(xs, ys)
    expected = [[ctx.trace(ctx.mul(int(x), int(y))) for y in ys] for x in xs]
    assert table.tolist() == expected

    counts = trace_product_counts(ctx, xs, ys)
    assert counts.sum() == 30 * 40
    hist = trace_product_histograms(ctx, xs, ys)
    assert (hist.sum(axis=0) == counts).all()
    assert (hist.sum(axis=1) == 40).all()


def test_dual_basis_of_power_basis():
    ctx = make_field(3, 4)
    basis = power_basis(ctx)
    dual = dual_basis(ctx, basis)
    for i, w in enumerate(dual):
        for j, x in enumerate(basis):
            assert ctx.trace(ctx.mul(w, x)) == (1 if i == j else 0)


def test_dual_basis_rejects_dependent_vectors():
    ctx = make_field(3, 4)
    with pytest.raises(NotABasis):
        dual_basis(ctx, [1, 1, 3, 9])
    with pytest.raises(NotABasis):
        dual_basis(ctx, [1, 3])


def test_subfield_and_residues():
    ctx = make_field(3, 4)
    sub = subfield(ctx, 2)
    assert len(sub) == 9
    for x in sub:
        for y in sub:
            assert ctx.mul(x, y) in sub
            assert ctx.add(x, y) in sub
    assert quadratic_residues(7).elems == (1, 2, 4)
    assert len(quadratic_residues(13)) == 6
    with pytest.raises(EvenCharacteristic):
        quadratic_residues(2)
    with pytest.raises(DegreeMismatch):
        subfield(ctx, 3)


def test_subset_operations():
    ctx = make_field(5, 1)
    s = Subset.of(ctx, [3, 1, 3, 0])
    assert s.elems == (0, 1, 3)
    assert 3 in s and 2 not in s
    assert s.nonzero().elems == (1, 3)
    assert s.union(Subset.of(ctx, [4])).elems == (0, 1, 3, 4)
    assert s.difference(Subset.of(ctx, [1])).elems == (0, 3)
    assert Subset.of(ctx, [1]).issubset(s)
    with pytest.raises(InvalidElement):
        Subset.of(ctx, [5])
    with pytest.raises(FieldMismatch):
        s.union(Subset.of(make_field(7, 1), [1]))


def test_subset_serialization():
    ctx = make_field(3, 2)
    s = Subset.of(ctx, [0, 4, 8])
    assert load_subset(ctx, dump_subset(s, "json")) == s
    assert load_subset(ctx, dump_subset(s, "text")) == s
    assert load_subset(ctx, "[8, 4, 0]") == s
    with pytest.raises(FieldMismatch):
        load_subset(make_field(3, 2, [2, 2, 1]), dump_subset(s))
    with pytest.raises(BadParameters):
        load_subset(ctx, '{"p": 3, "r": 2, "modulus": [1, 0, 1]}')
    with pytest.raises(BadParameters):
        load_subset(ctx, "# p=3 r=2\n1\n")


if __name__ == "__main__":
    print("=" * 50)
    print("开始测试有限域模块")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-v"]))
