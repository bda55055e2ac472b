"""
加法能量 E(S) = #{(s1,s2,s3,s4) ∈ S^4 : s1+s2 = s3+s4} = Σ_x r_S(x)^2

r_{A+B}(x) 的计算有三条路径：
  - sparse: 两两求和后 np.unique，适合 |A||B| 远小于 q
  - dense:  长度为 q 的 bincount
  - fft:    把 F_q 看作 (Z/p)^r，用 numpy.fft.fftn 做循环卷积
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.config import ENERGY_CONFIG, SUMPRODUCT_CONFIG
from src.errors import TooLarge
from src.field.field_core import FieldCtx, Subset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class EnergyValue:
    count: int

    def __int__(self) -> int:
        return self.count


@dataclass
class RepresentationCounts:
    """r_{A+B}，稠密（长度 q）或稀疏（有序键 + 计数）"""
    q: int
    method: str
    dense: Optional[np.ndarray] = None
    keys: Optional[np.ndarray] = None
    counts: Optional[np.ndarray] = None

    def values(self) -> np.ndarray:
        return self.dense if self.dense is not None else self.counts

    def lookup(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self.dense is not None:
            return self.dense[xs]
        if len(self.keys) == 0:
            return np.zeros(len(xs), dtype=np.int64)
        idx = np.clip(np.searchsorted(self.keys, xs), 0, len(self.keys) - 1)
        return np.where(self.keys[idx] == xs, self.counts[idx], 0)

    def total(self) -> int:
        return int(self.values().sum())

    def sum_of_squares(self) -> int:
        c = self.values()
        c = c[c > 0]
        if len(c) == 0:
            return 0
        if int(c.max()) * int(c.sum()) < 2 ** 62:
            return int(np.dot(c, c))
        return sum(int(v) * int(v) for v in c)


def _pair_sums(ctx: FieldCtx, a: np.ndarray, b: np.ndarray, step: int):
    """按 a 分块生成两两之和"""
    for start in range(0, len(a), step):
        block = a[start:start + step]
        yield ctx.add_many(np.repeat(block, len(b)), np.tile(b, len(block)))


def representation_counts(ctx: FieldCtx, a_set: Subset, b_set: Subset,
                          method: str = "auto") -> RepresentationCounts:
    """r_{A+B}(x) = #{(a, b) ∈ A×B : a + b = x}"""
    a, b = a_set.array, b_set.array
    pairs = len(a) * len(b)
    if method == "auto":
        if pairs >= ENERGY_CONFIG["fft_min_pairs"] and pairs >= ctx.q:
            method = "fft"
        elif pairs >= ENERGY_CONFIG["dense_ratio"] * ctx.q:
            method = "dense"
        else:
            method = "sparse"
    logger.debug(f"r_(A+B): |A|={len(a)}, |B|={len(b)}, q={ctx.q}, 方法={method}")

    if method == "fft":
        if pairs > SUMPRODUCT_CONFIG["fft_exact_limit"]:
            raise TooLarge(f"|A||B|={pairs} 超过 FFT 精确计数上限")
        shape = (ctx.p,) * ctx.r
        ind_a = np.zeros(ctx.q)
        ind_a[a] = 1.0
        ind_b = np.zeros(ctx.q)
        ind_b[b] = 1.0
        spec = np.fft.fftn(ind_a.reshape(shape)) * np.fft.fftn(ind_b.reshape(shape))
        dense = np.rint(np.fft.ifftn(spec).real).astype(np.int64).reshape(-1)
        return RepresentationCounts(ctx.q, method, dense=dense)

    step = max(1, ENERGY_CONFIG["chunk_elems"] // max(1, len(b)))
    if method == "dense":
        dense = np.zeros(ctx.q, dtype=np.int64)
        for sums in _pair_sums(ctx, a, b, step):
            dense += np.bincount(sums.astype(np.int64), minlength=ctx.q)
        return RepresentationCounts(ctx.q, method, dense=dense)

    if method == "sparse":
        if pairs == 0:
            empty = np.zeros(0, dtype=np.int64)
            return RepresentationCounts(ctx.q, method, keys=empty, counts=empty)
        sums = np.concatenate(list(_pair_sums(ctx, a, b, step))).astype(np.int64)
        keys, counts = np.unique(sums, return_counts=True)
        return RepresentationCounts(ctx.q, method, keys=keys, counts=counts.astype(np.int64))

    raise ValueError(f"未知的计数方法: {method}")


def additive_energy(ctx: FieldCtx, subset: Subset) -> EnergyValue:
    """E(S) = Σ_x r_S(x)^2"""
    return EnergyValue(representation_counts(ctx, subset, subset).sum_of_squares())


def additive_energy_bruteforce(ctx: FieldCtx, subset: Subset) -> EnergyValue:
    """按定义逐一检查 S^4 中的四元组，只用作测试基准"""
    limit = ENERGY_CONFIG["bruteforce_limit"]
    if len(subset) > limit:
        raise TooLarge(f"暴力计算能量要求 |S| <= {limit}，当前 |S|={len(subset)}")
    elems = subset.elems
    sums = {(s1, s2): ctx.add(s1, s2) for s1 in elems for s2 in elems}
    count = 0
    for s1, s2, s3, s4 in itertools.product(elems, repeat=4):
        if sums[s1, s2] == sums[s3, s4]:
            count += 1
    return EnergyValue(count)
