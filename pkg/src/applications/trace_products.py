"""
迹乘积 Tr(CD) 的精确计数与覆盖条件
"""
import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from src.characters.characters import CharId, CycloSum, cyclo_sum_total, double_char_sum
from src.field.field_core import FieldCtx, Subset, trace_product_counts
from src.subset_select.bounds import BoundParams, Interval, m_of_d, theorem1_bound

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceProfile:
    """counts[s] = N_s = #{(c, u) ∈ C×U : Tr(cu) = s}"""
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def support(self) -> List[int]:
        return [s for s, n in enumerate(self.counts) if n > 0]


def trace_profile(ctx: FieldCtx, c_set: Subset, u_set: Subset) -> TraceProfile:
    counts = trace_product_counts(ctx, c_set.array, u_set.array)
    return TraceProfile(tuple(int(n) for n in counts))


def trace_product_covers(ctx: FieldCtx, c_set: Subset, d_set: Subset) -> Tuple[bool, List[int]]:
    """Tr(CD) = F_p 是否成立，以及缺失的迹值"""
    profile = trace_profile(ctx, c_set, d_set)
    missing = [s for s, n in enumerate(profile.counts) if n == 0]
    return not missing, missing


def trace_profile_via_characters(ctx: FieldCtx, c_set: Subset, u_set: Subset) -> TraceProfile:
    """
    用特征展开求 N_s：p N_s = Σ_{j∈F_p} ζ^{-js} Σ_{c,u} ψ(j c u)
    全程在分圆整数上精确计算，结果应与 trace_profile 一致
    """
    p = ctx.p
    # F_p 中的 j 在 F_q 中的编码就是 j；j = 0 项为 |C||U|
    sums = [CycloSum.integer(p, len(c_set) * len(u_set))]
    sums += [double_char_sum(ctx, CharId(j), c_set, u_set) for j in range(1, p)]
    counts = []
    for s in range(p):
        acc: CycloSum = cyclo_sum_total(p, (CycloSum.root(p, -j * s) * sums[j] for j in range(p)))
        value = acc.integer_value()
        if value % p:
            raise ArithmeticError(f"特征展开得到的 p N_{s} = {value} 不能被 p 整除")
        counts.append(value // p)
    return TraceProfile(tuple(counts))


def check_thm3_condition(c_size: int, d_size: int, p: int, q: int,
                         params: Optional[BoundParams] = None) -> bool:
    """|C| > λ p^4 q / (|D| M(|D|))，严格不等号"""
    params = params or BoundParams()
    threshold = params.lam * float(p) ** 4 * q / (d_size * m_of_d(q, d_size))
    return c_size > threshold


def legacy_trace_conditions(c_size: int, d_size: int, p: int, q: int) -> Tuple[bool, bool]:
    """(|C||D| > p^2 q, |C||D| >= pq)：前者保证 Tr(CD) = F_p，后者保证 F_p^* ⊆ Tr(CD)"""
    cd = c_size * d_size
    return cd > p * p * q, cd >= p * q


def trace_deviation_report(ctx: FieldCtx, c_set: Subset, u_set: Subset, d_size: int,
                           params: Optional[BoundParams] = None, k: int = 1) -> dict:
    """
    把偏差 max_s |N_s - |C||U|/p| 与 κ(|C|^3|D|^3 q/M(|D|))^{1/4} 对比，
    并给出保证 N_s > 0 的 |C| 下限 κ^4 (k+1)^4 p^4 q / (|D| M(|D|))
    """
    params = params or BoundParams()
    profile = trace_profile(ctx, c_set, u_set)
    cu = len(c_set) * len(u_set)
    deviation = max(abs(n * ctx.p - cu) for n in profile.counts) / ctx.p
    bound = theorem1_bound(len(c_set), d_size, ctx.q, params)
    sufficient = params.kappa ** 4 * (k + 1) ** 4 * float(ctx.p) ** 4 * ctx.q / (
        d_size * m_of_d(ctx.q, d_size))
    return {
        "sizeC": len(c_set),
        "sizeU": len(u_set),
        "sizeD": d_size,
        "max_deviation": deviation,
        "deviation_bound": bound,
        "within_bound": deviation <= bound,
        "sufficient_sizeC": sufficient,
        "covers": min(profile.counts) > 0,
    }


def thm3_improvement_windows(p: int, q: int, lam: float) -> Tuple[Interval, Interval]:
    """
    |D| 的两个窗口：在窗口内，按 |D| 给出的 |C| 下限比
    |C||D| > p^2 q（第一个）或 |C||D| >= pq（第二个）更宽
    """
    q_f, p_f = float(q), float(p)
    log_q = math.log(q_f)
    lo1 = lam ** 1.25 * p_f ** 2.5 * math.sqrt(q_f) * log_q ** 3.875
    hi1 = q_f / (lam ** 2 * p_f ** 4 * log_q ** 5.5)
    lo2 = lam ** 1.25 * p_f ** 3.75 * math.sqrt(q_f) * log_q ** 3.875
    hi2 = q_f / (lam ** 2 * p_f ** 6 * log_q ** 5.5)
    return Interval(lo1, hi1, lo1 < hi1), Interval(lo2, hi2, lo2 < hi2)


class SampleSizes(NamedTuple):
    d_size: int
    c_size: int
    alpha: float


def inversion_closed_sample_sizes(p: int, q: int) -> SampleSizes:
    """
    D 对求逆封闭时的一组样例规模：
    |D| = ⌈q^{9/13}(log q)^{7/26}⌉, |C| = ⌈p^4 q^{2/13}(log q)^{69/26}⌉,
    此时 |C||D| ≪ q^α (log q)^{38/13}/p，α = 3/r + 11/13
    """
    r = round(math.log(q, p))
    log_q = math.log(q)
    d_size = math.ceil(float(q) ** (9 / 13) * log_q ** (7 / 26))
    c_size = math.ceil(float(p) ** 4 * float(q) ** (2 / 13) * log_q ** (69 / 26))
    return SampleSizes(d_size, c_size, 3 / r + 11 / 13)
