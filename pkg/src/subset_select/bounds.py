"""
双重特征和的上界与改进区间

所有函数只依赖集合大小，不构造集合，因此可以在 q 很大时直接求值。
对数一律取自然对数。
"""
import math
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from config.config import BOUND_CONFIG
from src.errors import DomainError


class BoundParams(BaseModel):
    """隐含常数 λ 与 κ，均需为正"""
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    lam: float = Field(default=BOUND_CONFIG["lambda"], gt=0, alias="lambda")
    kappa: float = Field(default=BOUND_CONFIG["kappa"], gt=0)


class Interval(NamedTuple):
    lo: float
    hi: float
    nonempty: bool


def m_of_d(q: int, n: int) -> float:
    """M(n) = min{ q^{1/2} / (n^{1/2} (log n)^{11/4}), n^{4/5} / (q^{2/5} (log n)^{31/10}) }"""
    if n <= 1:
        raise DomainError(f"M(|D|) 要求 |D| >= 2，当前 |D|={n}")
    q, n = float(q), float(n)
    log_n = math.log(n)
    first = math.sqrt(q) / (math.sqrt(n) * log_n ** 2.75)
    second = n ** 0.8 / (q ** 0.4 * log_n ** 3.1)
    return min(first, second)


def classical_bound(c_size: int, d_size: int, q: int) -> float:
    """min{(|C||D|q)^{1/2}, |C||D|}"""
    cd = c_size * d_size
    return min(math.sqrt(cd * q), float(cd))


def lemma1_bound(c_size: int, energy_u: int, q: int) -> float:
    """(|C|^3 E(U) q)^{1/4}"""
    return math.sqrt(math.sqrt(c_size ** 3 * int(energy_u) * q))


def theorem1_bound(c_size: int, d_size: int, q: int, params: BoundParams = BoundParams()) -> float:
    """κ (|C|^3 |D|^3 q / M(|D|))^{1/4}"""
    m = m_of_d(q, d_size)
    return params.kappa * (float(c_size ** 3 * d_size ** 3 * q) / m) ** 0.25


def energy_ratio(energy_u: int, d_size: int, q: int) -> float:
    """E(U) M(|D|) / |D|^3，低能量子集的经验指标"""
    return int(energy_u) * m_of_d(q, d_size) / float(d_size) ** 3


def improves_classical(c_size: int, d_size: int, q: int, lam: float) -> bool:
    """|C| > 0 且 M(|D|) > λ max{q/(|C||D|), |C||D|/q}"""
    if c_size <= 0:
        return False
    cd = float(c_size * d_size)
    return m_of_d(q, d_size) > lam * max(q / cd, cd / q)


def improvement_interval(q: int, d_size: int, lam: float) -> Interval:
    """使改进上界优于经典上界的 |C| 的区间（用 log q 代替 log|D|）；|D| < 2 或 q < 3 时为空区间"""
    if d_size < 2 or q < 3:
        return Interval(0.0, 0.0, False)
    q, d = float(q), float(d_size)
    log_q = math.log(q)
    lo = lam * max(math.sqrt(q) * log_q ** 2.75 / math.sqrt(d),
                   q ** 1.4 * log_q ** 3.1 / d ** 1.8)
    hi = min(q ** 1.5 / (d ** 1.5 * log_q ** 2.75),
             q ** 0.6 / (d ** 0.2 * log_q ** 3.1)) / lam
    return Interval(lo, hi, lo < hi)


def theorem1_d_window(q: int, lam: float) -> Interval:
    """改进区间非空时 |D| 的范围：(2λ²)^{5/8} q^{1/2} (log q)^{31/8} < |D| < (2λ²)^{-1} q (log q)^{-11/2}"""
    q = float(q)
    log_q = math.log(q)
    lo = (2 * lam ** 2) ** 0.625 * math.sqrt(q) * log_q ** 3.875
    hi = q / (2 * lam ** 2 * log_q ** 5.5)
    return Interval(lo, hi, lo < hi)


def low_trace_p_window(q: int, lam: float) -> Interval:
    """
    低迹值构造起作用的特征 p 的范围：λ (log q)^11 < p < λ^{-1} q (log q)^{-31/4}
    p 落在其中时改进上界小于 0.99|C||D|/2，且迹区间和积构造满足下界条件
    """
    q = float(q)
    log_q = math.log(q)
    lo = lam * log_q ** 11
    hi = q / (lam * log_q ** 7.75)
    return Interval(lo, hi, lo < hi)
