"""
和积方程 a + b = cd 的解数

两种精确算法：
  - brute:       对 A+B 的两两和与 CD 的两两积逐一比较
  - convolution: 先求 r_{A+B}，再对每个积 cd 查表求和
外层都按 C 分块，块间结果是整数和，与调度顺序无关。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from config.config import CHARACTER_CONFIG, SUMPRODUCT_CONFIG, THREADS
from src.characters.characters import character_magnitudes
from src.energy.energy import representation_counts
from src.errors import TooLarge
from src.field.field_core import FieldCtx, Subset, trace_product_counts, trace_product_histograms
from src.subset_select.bounds import BoundParams, Interval, m_of_d

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumProductCount:
    n: int
    algorithm: str  # brute | convolution


def _products(ctx: FieldCtx, c_block: np.ndarray, d_arr: np.ndarray) -> np.ndarray:
    return ctx.mul_many(np.repeat(c_block, len(d_arr)), np.tile(d_arr, len(c_block))).astype(np.int64)


def _sum_over_c(c_arr: np.ndarray, d_len: int, count_block: Callable[[np.ndarray], int]) -> int:
    step = max(1, CHARACTER_CONFIG["chunk_elems"] // max(1, d_len))
    blocks = [c_arr[i:i + step] for i in range(0, len(c_arr), step)]
    if THREADS == 1 or len(blocks) == 1:
        return sum(count_block(b) for b in blocks)
    with ThreadPoolExecutor(max_workers=THREADS) as pool:
        return sum(pool.map(count_block, blocks))


def _count_brute(ctx: FieldCtx, a_set: Subset, b_set: Subset, c_set: Subset, d_set: Subset) -> int:
    a, b = a_set.array, b_set.array
    sums = ctx.add_many(np.repeat(a, len(b)), np.tile(b, len(a))).astype(np.int64)
    d_arr = d_set.array

    def count_block(c_block: np.ndarray) -> int:
        prods = _products(ctx, c_block, d_arr)
        total = 0
        step = max(1, CHARACTER_CONFIG["chunk_elems"] // max(1, len(prods)))
        for start in range(0, len(sums), step):
            total += int(np.count_nonzero(sums[start:start + step, None] == prods[None, :]))
        return total

    return _sum_over_c(c_set.array, len(d_arr), count_block)


def _count_convolution(ctx: FieldCtx, a_set: Subset, b_set: Subset, c_set: Subset, d_set: Subset) -> int:
    rep = representation_counts(ctx, a_set, b_set)
    d_arr = d_set.array

    def count_block(c_block: np.ndarray) -> int:
        return int(rep.lookup(_products(ctx, c_block, d_arr)).sum())

    return _sum_over_c(c_set.array, len(d_arr), count_block)


def count_sum_product(ctx: FieldCtx, a_set: Subset, b_set: Subset, c_set: Subset, d_set: Subset,
                      algorithm: str = "convolution") -> SumProductCount:
    """N = #{(a, b, c, d) ∈ A×B×C×D : a + b = cd}"""
    if algorithm == "brute":
        work = len(a_set) * len(b_set) * len(c_set) * len(d_set)
        if work > SUMPRODUCT_CONFIG["brute_limit"]:
            raise TooLarge(f"暴力计数要求 |A||B||C||D| <= {SUMPRODUCT_CONFIG['brute_limit']}，当前为 {work}")
        n = _count_brute(ctx, a_set, b_set, c_set, d_set)
    elif algorithm == "convolution":
        n = _count_convolution(ctx, a_set, b_set, c_set, d_set)
    else:
        raise ValueError(f"未知的计数算法: {algorithm}")
    logger.info(f"和积方程计数: 算法={algorithm}, N={n}")
    return SumProductCount(n, algorithm)


def check_thm4_condition(a_size: int, b_size: int, c_size: int, d_size: int, q: int,
                         params: Optional[BoundParams] = None) -> bool:
    """|A|^2 |B|^2 |C| |D| M(|D|) > λ q^5，严格不等号"""
    params = params or BoundParams()
    lhs = float(a_size * a_size * b_size * b_size * c_size * d_size) * m_of_d(q, d_size)
    return lhs > params.lam * float(q) ** 5


def legacy_sumproduct_condition(a_size: int, b_size: int, c_size: int, d_size: int, q: int) -> bool:
    """|A||B||C||D| > q^3"""
    return a_size * b_size * c_size * d_size > q ** 3


def thm4_improvement_window(q: int, d_size: int, lam: float) -> Tuple[Interval, Interval]:
    """
    (|A||B| 的范围, |D| 的范围)：|A||B| 落在前者内时尺寸条件优于 |A||B||C||D| > q^3，
    后者是前者非平凡所需的 |D| 窗口
    """
    q_f, d = float(q), float(d_size)
    log_q = math.log(q_f)
    ab_lo = 2 * lam * max(math.sqrt(d) * q_f ** 1.5 * log_q ** 2.75,
                          q_f ** 2.4 * log_q ** 3.1 / d ** 0.8)
    ab_hi = q_f ** 2
    d_lo = (4 * lam) ** 1.25 * math.sqrt(q_f) * log_q ** 3.875
    d_hi = q_f / ((4 * lam) ** 2 * log_q ** 5.5)
    return Interval(ab_lo, ab_hi, ab_lo < ab_hi), Interval(d_lo, d_hi, d_lo < d_hi)


def trace_obstruction(ctx: FieldCtx, a_set: Subset, b_set: Subset, c_set: Subset,
                      d_set: Subset) -> Tuple[bool, list, list]:
    """
    (Tr(A) + Tr(B)) ∩ Tr(CD) = ∅ 时 N = 0
    只用迹的取值集合，不枚举四元组
    """
    p = ctx.p
    tr_a = np.unique(ctx.trace_many(a_set.array)) if len(a_set) else np.zeros(0, dtype=np.int64)
    tr_b = np.unique(ctx.trace_many(b_set.array)) if len(b_set) else np.zeros(0, dtype=np.int64)
    tr_sum = sorted({int(v) for v in ((tr_a[:, None] + tr_b[None, :]) % p).ravel()})
    counts = trace_product_counts(ctx, c_set.array, d_set.array)
    tr_cd = [s for s in range(p) if counts[s] > 0]
    disjoint = not set(tr_sum) & set(tr_cd)
    return disjoint, tr_sum, tr_cd


def sum_product_chain_report(ctx: FieldCtx, a_set: Subset, b_set: Subset, c_set: Subset,
                             u_set: Subset, d_size: int, params: Optional[BoundParams] = None) -> dict:
    """
    在具体集合上逐项求值 |N* - |A||B||C||U|/q| 的估计链：
    特征展开 -> 双重和上界 -> Cauchy-Schwarz -> 合并后的上界
    只给数值，不作断言
    """
    params = params or BoundParams()
    q = ctx.q
    n_star = count_sum_product(ctx, a_set, b_set, c_set, u_set).n
    main = len(a_set) * len(b_set) * len(c_set) * len(u_set) / q

    mag_a = character_magnitudes(ctx, a_set)[1:]
    mag_b = character_magnitudes(ctx, b_set)[1:]
    prods = _products(ctx, c_set.array, u_set.array)
    hist = trace_product_histograms(ctx, ctx.elements()[1:], prods).astype(np.float64)
    angles = 2 * np.pi * np.arange(ctx.p) / ctx.p
    mag_cu = np.hypot(hist @ np.cos(angles), hist @ np.sin(angles))

    double_bound = params.kappa * (float(len(c_set)) ** 3 * float(d_size) ** 3 * q / m_of_d(q, d_size)) ** 0.25
    ab_sum = float(np.dot(mag_a, mag_b))
    step_expansion = float(np.dot(mag_a * mag_b, mag_cu)) / q
    step_double = double_bound * ab_sum / q
    step_cauchy = double_bound * math.sqrt(q * len(a_set)) * math.sqrt(q * len(b_set)) / q
    step_final = params.kappa * (float(len(a_set)) ** 2 * float(len(b_set)) ** 2 * float(len(c_set)) ** 3
                                 * float(d_size) ** 3 * q / m_of_d(q, d_size)) ** 0.25
    return {
        "N_star": n_star,
        "main_term": main,
        "deviation": abs(n_star - main),
        "character_expansion": step_expansion,
        "double_sum_step": step_double,
        "cauchy_schwarz_step": step_cauchy,
        "combined_bound": step_final,
        "max_double_sum": float(mag_cu.max()) if len(mag_cu) else 0.0,
        "double_sum_bound": double_bound,
    }
