"""
有理函数 f = num/den ∈ F_q(X)

多项式系数是 F_q 元素的编码，常数项在前。约化后 gcd(num, den) = 1 且 den 首一，
所以结构相等就是函数相等。次数 k = max(deg num, deg den)。
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.config import RATIONAL_MAP_CONFIG
from src.errors import PoleInSet, ZeroDenominator
from src.field.field_core import FieldCtx, Subset

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]


# ----------------------------------------------------------------------
# F_q[X] 上的多项式运算
# ----------------------------------------------------------------------

def _trim(a: Sequence[int]) -> List[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(ctx: FieldCtx, a, b) -> List[int]:
    n = max(len(a), len(b))
    return _trim([ctx.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def _scale(ctx: FieldCtx, a, c: int) -> List[int]:
    return _trim([ctx.mul(x, c) for x in a])


def _mul(ctx: FieldCtx, a, b) -> List[int]:
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return _trim(out)


def _divmod(ctx: FieldCtx, a, b) -> Tuple[List[int], List[int]]:
    b = _trim(b)
    rem = _trim(a)
    if len(rem) < len(b):
        return [], rem
    inv_lead = ctx.inv(b[-1])
    quot = [0] * (len(rem) - len(b) + 1)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = ctx.mul(rem[-1], inv_lead)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[i + shift] = ctx.sub(rem[i + shift], ctx.mul(c, y))
        rem = _trim(rem)
    return _trim(quot), rem


def _monic(ctx: FieldCtx, a) -> List[int]:
    a = _trim(a)
    return _scale(ctx, a, ctx.inv(a[-1])) if a else []


def _gcd(ctx: FieldCtx, a, b) -> List[int]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(ctx, a, b)[1]
    return _monic(ctx, a)


def _horner(ctx: FieldCtx, poly: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def _horner_many(ctx: FieldCtx, poly: Sequence[int], xs: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in reversed(poly):
        acc = ctx.add_many(ctx.mul_many(acc, xs), c)
    return acc


def _degree(a: Sequence[int]) -> int:
    return len(_trim(a)) - 1


# ----------------------------------------------------------------------
# 有理函数
# ----------------------------------------------------------------------

class _Pole:
    """eval 在极点处的返回值"""

    def __repr__(self):
        return "POLE"


POLE = _Pole()


@dataclass(frozen=True)
class RationalMap:
    num: Poly
    den: Poly
    k: int

    def describe(self) -> str:
        """与 parse_rational_map 互逆的字符串形式"""
        num = ",".join(map(str, self.num)) or "0"
        return f"{num} / {','.join(map(str, self.den))}"

    @property
    def is_polynomial(self) -> bool:
        return self.den == (1,)


def reduce(ctx: FieldCtx, num: Sequence[int], den: Sequence[int] = (1,)) -> RationalMap:
    """约去公因式并把分母化为首一"""
    for c in list(num) + list(den):
        ctx.check(c)
    den = _trim(den)
    if not den:
        raise ZeroDenominator("有理函数的分母不能是零多项式")
    num = _trim(num)
    if not num:
        return RationalMap((), (1,), 0)
    g = _gcd(ctx, num, den)
    num = _divmod(ctx, num, g)[0]
    den = _divmod(ctx, den, g)[0]
    lead_inv = ctx.inv(den[-1])
    num, den = _scale(ctx, num, lead_inv), _scale(ctx, den, lead_inv)
    return RationalMap(tuple(num), tuple(den), max(_degree(num), _degree(den)))


def parse_rational_map(ctx: FieldCtx, text: str) -> RationalMap:
    """
    解析 "poly / poly"，多项式为逗号分隔的元素编码，常数项在前
    例如 "1 / 0,1" 表示 1/X，"0,0,1" 表示 X^2
    """
    parts = text.split("/")
    if len(parts) > 2:
        raise ValueError(f"无法解析有理函数: {text!r}")

    def _poly(s: str) -> List[int]:
        s = s.strip()
        if not s:
            raise ValueError(f"无法解析有理函数: {text!r}")
        return [int(c) for c in s.split(",")]

    num = _poly(parts[0])
    den = _poly(parts[1]) if len(parts) == 2 else [1]
    return reduce(ctx, num, den)


def eval_map(ctx: FieldCtx, f: RationalMap, x: int):
    """f(x)；den(x) = 0 时返回 POLE"""
    x = ctx.check(x)
    d = _horner(ctx, f.den, x)
    if d == 0:
        return POLE
    return ctx.mul(_horner(ctx, f.num, x), ctx.inv(d))


def eval_many(ctx: FieldCtx, f: RationalMap, xs) -> Tuple[np.ndarray, np.ndarray]:
    """向量化求值，返回 (值, 极点掩码)；极点处的值为 0"""
    xs = np.asarray(xs, dtype=np.int64)
    num = _horner_many(ctx, f.num, xs)
    den = _horner_many(ctx, f.den, xs)
    poles = den == 0
    if f.is_polynomial:
        return num.astype(np.int64), poles
    return ctx.mul_many(num, ctx.inv_many(den)).astype(np.int64), poles


def maps_into(ctx: FieldCtx, f: RationalMap, d_set: Subset) -> bool:
    """f 在 D 上无极点且 f(D) ⊆ D"""
    if not len(d_set):
        return True
    values, poles = eval_many(ctx, f, d_set.array)
    if poles.any():
        return False
    return bool(np.isin(values, d_set.array).all())


def image(ctx: FieldCtx, f: RationalMap, t_set: Subset) -> Subset:
    """f(T)，去重；每个值至多被取 k 次"""
    values, poles = eval_many(ctx, f, t_set.array)
    if poles.any():
        raise PoleInSet(int(t_set.array[np.argmax(poles)]))
    return Subset.of(ctx, values.tolist())


# ----------------------------------------------------------------------
# 非线性条件 f ∉ {a(g^p - g) + bX + c}
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Condition2Witness:
    a: int
    b: int
    c: int
    g: Poly


@dataclass(frozen=True)
class Condition2Status:
    kind: str  # whitelisted | violates | unknown
    witness: Optional[Condition2Witness] = None
    reason: str = ""

    @property
    def violates(self) -> bool:
        return self.kind == "violates"


def _is_inversion(ctx: FieldCtx, f: RationalMap) -> bool:
    return f.num == (1,) and f.den == (0, 1)


def _is_odd_squaring(ctx: FieldCtx, f: RationalMap) -> bool:
    return ctx.p != 2 and f.num == (0, 0, 1) and f.den == (1,)


# 已知满足非线性条件的函数族
WHITELIST = {
    "inversion": _is_inversion,
    "squaring_odd_q": _is_odd_squaring,
}


def _artin_schreier_form(ctx: FieldCtx, a: int, g: Sequence[int], b: int, c: int) -> List[int]:
    """a(g^p - g) + bX + c，g^p 的系数由 Frobenius 给出"""
    p = ctx.p
    g = _trim(g)
    gp = [0] * (p * (len(g) - 1) + 1) if g else []
    for i, gi in enumerate(g):
        gp[i * p] = ctx.frobenius(gi)
    out = _scale(ctx, _sub(ctx, gp, g), a)
    out += [0] * max(0, 2 - len(out))
    out[0] = ctx.add(out[0], c)
    out[1] = ctx.add(out[1], b)
    return _trim(out)


def _search_violation(ctx: FieldCtx, f: RationalMap) -> Tuple[Optional[Condition2Witness], str]:
    """在 g 为次数 <= 2 的多项式范围内求解 f = a(g^p - g) + bX + c"""
    coeffs = list(f.num)
    coef = lambda i: coeffs[i] if i < len(coeffs) else 0  # noqa: E731
    if len(coeffs) <= 2:
        return Condition2Witness(0, coef(1), coef(0), ()), ""
    p = ctx.p
    allowed = {0, 1, 2, p, 2 * p}
    if any(v and i not in allowed for i, v in enumerate(coeffs)):
        return None, "系数支撑不在 {0, 1, 2, p, 2p} 内"
    top = coef(2 * p)
    if top == 0:
        candidates = [0]
    elif ctx.q - 1 > RATIONAL_MAP_CONFIG["condition2_search_limit"]:
        return None, f"q={ctx.q} 超过搜索上限"
    else:
        candidates = range(1, ctx.q)
    for g2 in candidates:
        a = 1 if g2 == 0 else ctx.div(top, ctx.frobenius(g2))
        # X^p 的系数是 a g1^p；p = 2 时 X^2 还带 -a g2
        target = coef(p)
        if p == 2:
            target = ctx.add(target, ctx.mul(a, g2))
        g1 = ctx.frobenius(ctx.div(target, a), ctx.r - 1)
        b = ctx.add(coef(1), ctx.mul(a, g1))
        c = coef(0)
        if _artin_schreier_form(ctx, a, [0, g1, g2], b, c) == _trim(coeffs):
            return Condition2Witness(a, b, c, tuple(_trim([0, g1, g2]))), ""
    return None, "没有找到次数 <= 2 的 g"


def condition2_status(ctx: FieldCtx, f: RationalMap) -> Condition2Status:
    """
    三值判定：白名单内的函数族为 whitelisted；
    找到 f = a(g^p - g) + bX + c（g 为次数 <= 2 的多项式）为 violates；其余 unknown
    """
    for name, predicate in WHITELIST.items():
        if predicate(ctx, f):
            return Condition2Status("whitelisted", reason=name)
    if not f.is_polynomial:
        return Condition2Status("unknown", reason="非多项式且不在白名单内")
    witness, reason = _search_violation(ctx, f)
    if witness is not None:
        logger.info(f"f = {f.describe()} 违反非线性条件: {witness}")
        return Condition2Status("violates", witness=witness)
    return Condition2Status("unknown", reason=reason)
