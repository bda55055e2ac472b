"""
确定性的例子与反例生成器

幂基取 x = X 的剩余类，因此系数向量 (d_0, ..., d_{r-1}) 的编码 Σ d_i p^i
正是 Σ d_i x^i，"F_p + F_p x + ... " 形式的集合可以直接按数位枚举。
"""
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Sequence

import numpy as np

from src.characters.characters import CANONICAL, CharId
from src.errors import BadParameters, NoSuchCharacter, TooSmallPrime
from src.field.field_core import (
    FieldCtx,
    Subset,
    dual_basis,
    dump_subset,
    make_field,
    power_basis,
    quadratic_residues,
    subfield,
    trace_product_histograms,
)

logger = logging.getLogger(__name__)

IDENTITY_MAP = "0,1"


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    ctx: FieldCtx
    sets: Dict[str, Subset]
    char: Optional[CharId] = None
    map: Optional[str] = None
    note: str = ""
    params: Dict[str, int] = field(default_factory=dict)

    def __getitem__(self, role: str) -> Subset:
        return self.sets[role]


def _digit_span(ctx: FieldCtx, free: Iterable[int], digit0: Sequence[int] = (0,)) -> np.ndarray:
    """d_0 取自 digit0，free 中的数位任取，其余数位为 0"""
    values = np.asarray(sorted(digit0), dtype=np.int64)
    for i in free:
        values = (values[:, None] + np.arange(ctx.p, dtype=np.int64)[None, :] * ctx.p ** i).ravel()
    return values


def _small_interval(p: int) -> int:
    """⌊0.1 √p⌋"""
    m = math.isqrt(p) // 10
    if m < 1:
        raise TooSmallPrime(f"p={p} 太小，⌊0.1√p⌋ = 0")
    return m


def build_intro_ap(p: int) -> NamedConstruction:
    """F_p 中 C = D = {0, ..., ⌊0.1√p⌋}，双重和接近平凡上界 |C||D|"""
    m = _small_interval(p)
    ctx = make_field(p, 1)
    c_set = Subset.of(ctx, range(m + 1))
    return NamedConstruction("intro_ap", ctx, {"C": c_set, "D": c_set}, char=CANONICAL,
                             note="|Σ ψ(cd)| >= cos(0.02π)|C||D|", params={"m": m})


def build_subfield_tight(ctx: FieldCtx) -> NamedConstruction:
    """C = D = F_{q^{1/2}}，取与子域迹正交的非零 a，双重和恰为 (|C||D|q)^{1/2}"""
    if ctx.r % 2:
        raise BadParameters(f"子域构造要求 r 为偶数，当前 r={ctx.r}")
    sub = subfield(ctx, ctx.r // 2)
    hist = trace_product_histograms(ctx, ctx.elements()[1:], sub.array)
    orthogonal = np.flatnonzero(hist[:, 0] == len(sub))
    if not len(orthogonal):
        raise NoSuchCharacter("找不到与子域正交的非零元素")
    a = int(orthogonal[0]) + 1
    logger.debug(f"子域紧性构造: q={ctx.q}, 扭转 a={a}")
    return NamedConstruction("subfield_tight", ctx, {"C": sub, "D": sub}, char=CharId(a),
                             note="|Σ ψ_a(cd)| = (|C||D|q)^{1/2}")


def _remark1_sets(ctx: FieldCtx) -> Dict[str, Subset]:
    m = _small_interval(ctx.p)
    c_set = Subset.of(ctx, range(m + 1))
    xs = ctx.elements()
    d_set = Subset.of(ctx, xs[np.isin(ctx.trace_table, np.arange(m + 1))].tolist())
    return {"C": c_set, "D": d_set}


def build_remark1(ctx: FieldCtx) -> NamedConstruction:
    """C = {0, ..., ⌊0.1√p⌋}，D = {x : Tr(x) ∈ C}；f = X 时没有低能量子集能改进上界"""
    return NamedConstruction("remark1", ctx, _remark1_sets(ctx), char=CANONICAL, map=IDENTITY_MAP,
                             note="|D| = |C|q/p")


def build_remark3(ctx: FieldCtx) -> NamedConstruction:
    """
    C = w_0 (Q + F_p x + ... + F_p x^{r/4})，D = Q + F_p x + ... + F_p x^{3r/4-1}
    w_0 是幂基的对偶基第一个元素，于是 Tr(CD) ⊆ Q ⊊ F_p
    """
    p, r = ctx.p, ctx.r
    if p == 2 or r % 4:
        raise BadParameters(f"该构造要求 p 为奇数且 4 | r，当前 p={p}, r={r}")
    residues = quadratic_residues(p).elems
    w0 = dual_basis(ctx, power_basis(ctx))[0]
    c_base = _digit_span(ctx, range(1, r // 4 + 1), residues)
    c_set = Subset.of(ctx, ctx.mul_many(c_base, w0).tolist())
    d_set = Subset.of(ctx, _digit_span(ctx, range(1, 3 * r // 4), residues).tolist())
    return NamedConstruction("remark3", ctx, {"C": c_set, "D": d_set}, map=IDENTITY_MAP,
                             note="Tr(CD) ⊆ Q", params={"w0": w0})


def build_sec4_affine(ctx: FieldCtx) -> NamedConstruction:
    """
    A = Z_1 + F_p x + ... + F_p x^{r-1}，B = Z_2 + (同上)，
    C = F_p x + ... + F_p x^{r/4}，D = F_p + ... + F_p x^{3r/4-1}；
    A + B 的常数项非零而 CD 的常数项为零，所以 N = 0
    """
    p, r = ctx.p, ctx.r
    if p % 4 != 1 or r % 4:
        raise BadParameters(f"该构造要求 p ≡ 1 (mod 4) 且 4 | r，当前 p={p}, r={r}")
    z1 = sorted({i for i in range(1, (p - 1) // 4 + 1)} | {p - i for i in range(1, (p - 1) // 4 + 1)})
    z2 = sorted(set(range(1, p)) - set(z1))
    sets = {
        "A": Subset.of(ctx, _digit_span(ctx, range(1, r), z1).tolist()),
        "B": Subset.of(ctx, _digit_span(ctx, range(1, r), z2).tolist()),
        "C": Subset.of(ctx, _digit_span(ctx, range(1, r // 4 + 1)).tolist()),
        "D": Subset.of(ctx, _digit_span(ctx, range(1, 3 * r // 4), range(p)).tolist()),
    }
    return NamedConstruction("sec4_affine", ctx, sets, map=IDENTITY_MAP, note="N = 0")


def build_sec4_trace_interval(ctx: FieldCtx) -> NamedConstruction:
    """C, D 同 remark1，A = B = {x : Tr(x) ∈ (0.005p, p/2)}；Tr(A+B) 与 Tr(CD) 不交"""
    p = ctx.p
    if p < 211:
        raise TooSmallPrime(f"迹区间构造要求 p >= 211，当前 p={p}")
    sets = _remark1_sets(ctx)
    tr = ctx.trace_table
    # 区间端点用整数比较
    mask = (200 * tr > p) & (2 * tr < p)
    a_set = Subset.of(ctx, ctx.elements()[mask].tolist())
    sets.update({"A": a_set, "B": a_set})
    return NamedConstruction("sec4_trace_interval", ctx, sets, map=IDENTITY_MAP,
                             note="Tr(A+B) ∩ Tr(CD) = ∅")


def build_intro_sumproduct_optimal(ctx: FieldCtx) -> NamedConstruction:
    """
    A = ∪{x_i, -x_i}（i = 1..(q-1)/4），B = F_q^* \\ A，C = F_q，D = {0}
    x_i 取编码递增序中满足 x < -x 的前 (q-1)/4 个元素
    """
    if ctx.p == 2 or ctx.q % 4 != 1:
        raise BadParameters(f"该构造要求 q ≡ 1 (mod 4) 且特征为奇数，当前 q={ctx.q}")
    xs = ctx.elements()[1:]
    reps = xs[xs < ctx.neg_many(xs)][: (ctx.q - 1) // 4]
    a_set = Subset.of(ctx, np.concatenate([reps, ctx.neg_many(reps)]).tolist())
    b_set = Subset.full(ctx).nonzero().difference(a_set)
    sets = {"A": a_set, "B": b_set, "C": Subset.full(ctx), "D": Subset.of(ctx, [0])}
    return NamedConstruction("intro_sumproduct_optimal", ctx, sets, note="N = 0, |A||B||C||D| >= q^3/8")


CONSTRUCTIONS: Dict[str, Callable[[FieldCtx], NamedConstruction]] = {
    "intro_ap": lambda ctx: build_intro_ap(ctx.p),
    "subfield_tight": build_subfield_tight,
    "remark1": build_remark1,
    "remark3": build_remark3,
    "sec4_affine": build_sec4_affine,
    "sec4_trace_interval": build_sec4_trace_interval,
    "intro_sumproduct_optimal": build_intro_sumproduct_optimal,
}


def build(name: str, p: int, r: int = 1, modulus: Optional[Sequence[int]] = None) -> NamedConstruction:
    if name not in CONSTRUCTIONS:
        raise BadParameters(f"未知的构造: {name}，可选: {', '.join(CONSTRUCTIONS)}")
    if name == "intro_ap" and r != 1:
        raise BadParameters("intro_ap 只定义在素域上 (r = 1)")
    nc = CONSTRUCTIONS[name](make_field(p, r, modulus))
    logger.info(f"构造 {name}: p={p}, r={r}, " + ", ".join(f"|{k}|={len(v)}" for k, v in nc.sets.items()))
    return nc


def construction_to_json(nc: NamedConstruction) -> dict:
    """集合按可移植的 Subset 格式输出"""
    return {
        "name": nc.name,
        "p": nc.ctx.p,
        "r": nc.ctx.r,
        "modulus": list(nc.ctx.modulus),
        "char": None if nc.char is None else nc.char.a,
        "map": nc.map,
        "note": nc.note,
        "params": dict(nc.params),
        "sizes": {role: len(s) for role, s in nc.sets.items()},
        "sets": {role: json.loads(dump_subset(s)) for role, s in nc.sets.items()},
    }
