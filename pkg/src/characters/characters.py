"""
加法特征与精确的分圆整数和

ψ_a(x) = ζ_p^{Tr(ax)}。所有特征和都落在 Z[ζ_p] 中，用长度为 p 的整数向量表示
（coeffs[j] 是 ζ^j 的重数），利用 1 + ζ + ... + ζ^{p-1} = 0 约化到最小系数为 0 的规范形式。
浮点数只在最后求模长时出现。
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from src.errors import DomainError
from src.field.field_core import FieldCtx, Subset, trace_product_counts, trace_product_histograms

logger = logging.getLogger(__name__)


def _canonical(coeffs: Sequence[int]) -> Tuple[int, ...]:
    shift = min(coeffs)
    return tuple(int(c) - shift for c in coeffs)


@dataclass(frozen=True)
class CycloSum:
    """Z[ζ_p] 中的元素，coeffs 为规范形式"""
    p: int
    coeffs: Tuple[int, ...]

    @classmethod
    def from_coeffs(cls, p: int, coeffs: Sequence[int]) -> "CycloSum":
        if len(coeffs) != p:
            raise ValueError(f"系数向量长度必须为 p={p}，收到 {len(coeffs)}")
        return cls(p, _canonical(coeffs))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycloSum":
        return cls.from_coeffs(p, [n] + [0] * (p - 1))

    @classmethod
    def root(cls, p: int, j: int) -> "CycloSum":
        """ζ^j"""
        coeffs = [0] * p
        coeffs[j % p] = 1
        return cls(p, tuple(coeffs))

    def canonical(self) -> "CycloSum":
        return CycloSum(self.p, _canonical(self.coeffs))

    def _check(self, other: "CycloSum"):
        if other.p != self.p:
            raise ValueError(f"分圆域不一致: p={self.p} 与 p={other.p}")

    def __add__(self, other: "CycloSum") -> "CycloSum":
        self._check(other)
        return CycloSum(self.p, _canonical([a + b for a, b in zip(self.coeffs, other.coeffs)]))

    def __neg__(self) -> "CycloSum":
        return CycloSum(self.p, _canonical([-a for a in self.coeffs]))

    def __sub__(self, other: "CycloSum") -> "CycloSum":
        return self + (-other)

    def __mul__(self, other: "CycloSum") -> "CycloSum":
        self._check(other)
        p = self.p
        out = [0] * p
        right = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in right:
                    out[(i + j) % p] += a * b
        return CycloSum(p, _canonical(out))

    def conj(self) -> "CycloSum":
        """复共轭：ζ^j -> ζ^{-j}"""
        p = self.p
        return CycloSum(p, tuple(self.coeffs[(-j) % p] for j in range(p)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        # n = n + m(1 + ζ + ... + ζ^{p-1})，所以 ζ^1..ζ^{p-1} 的系数全相等
        return len(set(self.coeffs[1:])) <= 1

    def integer_value(self) -> int:
        if not self.is_integer():
            raise ValueError("该分圆和不是整数")
        return self.coeffs[0] - self.coeffs[1]

    def is_real(self) -> bool:
        return self.conj() == self

    def to_complex(self) -> complex:
        angles = 2 * np.pi * np.arange(self.p) / self.p
        c = np.array([float(v) for v in self.coeffs])
        return complex(np.dot(c, np.cos(angles)), np.dot(c, np.sin(angles)))

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "coeffs": list(self.coeffs)})

    @classmethod
    def from_json(cls, text: str) -> "CycloSum":
        data = json.loads(text)
        return cls.from_coeffs(data["p"], data["coeffs"])


def cyclo_sum_total(p: int, items) -> CycloSum:
    """按任意顺序累加，结果与分块方式无关"""
    acc = [0] * p
    for s in items:
        for j, c in enumerate(s.coeffs):
            acc[j] += c
    return CycloSum.from_coeffs(p, acc)


@dataclass(frozen=True)
class CharId:
    """ψ_a(x) = ζ_p^{Tr(ax)}，a = 0 为平凡特征"""
    a: int

    @property
    def trivial(self) -> bool:
        return self.a == 0


CANONICAL = CharId(1)


def char_eval(ctx: FieldCtx, char: CharId, x: int) -> CycloSum:
    return CycloSum.root(ctx.p, ctx.trace(ctx.mul(ctx.check(char.a), ctx.check(x))))


def char_sum(ctx: FieldCtx, char: CharId, subset: Subset) -> CycloSum:
    """Σ_{x∈A} ψ(x)"""
    counts = trace_product_counts(ctx, [char.a], subset.array)
    return CycloSum.from_coeffs(ctx.p, counts.tolist())


def double_char_sum(ctx: FieldCtx, char: CharId, c_set: Subset, d_set: Subset) -> CycloSum:
    """Σ_{c∈C, d∈D} ψ(cd)：统计 Tr(a c d) 的取值分布，直接得到 ζ 的重数"""
    if char.trivial:
        raise DomainError("双重特征和要求非平凡特征 a != 0")
    if not len(c_set) or not len(d_set):
        return CycloSum.integer(ctx.p, 0)
    twisted = ctx.mul_many(c_set.array, char.a)
    counts = trace_product_counts(ctx, twisted, d_set.array)
    return CycloSum.from_coeffs(ctx.p, counts.tolist())


def magnitude(s: CycloSum) -> float:
    """|Σ coeffs[j] ζ^j|，整数时走精确路径"""
    if s.is_integer():
        return float(abs(s.integer_value()))
    return abs(s.to_complex())


def norm_square(s: CycloSum) -> CycloSum:
    """s * conj(s)，实数，精确"""
    return s * s.conj()


def fourth_moment(ctx: FieldCtx, char: CharId, u_set: Subset) -> CycloSum:
    """
    Σ_{c∈F_q} |Σ_{u∈U} ψ(cu)|^4 的精确值
    对非平凡特征应等于整数 q·E(U)
    """
    twisted = ctx.mul_many(ctx.elements(), char.a)
    hist = trace_product_histograms(ctx, twisted, u_set.array)
    terms: Dict[Tuple[int, ...], int] = {}
    # 很多 c 给出相同的分布，合并后只做一次乘法
    for row in map(tuple, hist.tolist()):
        terms[row] = terms.get(row, 0) + 1
    p = ctx.p
    acc = [0] * p
    for row, mult in terms.items():
        n = norm_square(CycloSum.from_coeffs(p, row))
        sq = n * n
        for j, v in enumerate(sq.coeffs):
            acc[j] += mult * v
    return CycloSum.from_coeffs(p, acc)


def character_magnitudes(ctx: FieldCtx, subset: Subset) -> np.ndarray:
    """对全部 t∈F_q 计算 |Σ_{x∈A} ψ_t(x)|，按 t 的编码索引"""
    hist = trace_product_histograms(ctx, ctx.elements(), subset.array).astype(np.float64)
    angles = 2 * math.pi * np.arange(ctx.p) / ctx.p
    return np.hypot(hist @ np.cos(angles), hist @ np.sin(angles))
