"""
低能量子集 U ⊆ D 的选取

存在性结论依赖一个非构造性的分解，这里用三种可复现的策略代替：
  - exhaustive:   |D| 较小时在大小恰为 ⌈|D|/(k+1)⌉ 的子集中找能量最小者
  - proof_rule:   由调用方给出划分 D = S ∪ T，按 |S| 与 |D|/(k+1) 的比较返回 S 或 f(T)
  - local_search: 固定种子的随机起点 + 最速下降的单元素交换
结果只报告实际达到的 E(U) 与 E(U)M(|D|)/|D|^3，不声称渐近上界。
"""
import itertools
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.config import SELECTION_CONFIG, THREADS
from src.energy.energy import EnergyValue, additive_energy
from src.errors import BadParameters, ConditionViolated, DomainError, PoleInSet, TooLarge, UnstableSet
from src.field.field_core import FieldCtx, Subset
from src.rational_maps.rational_maps import RationalMap, condition2_status, eval_many, image
from src.subset_select.bounds import BoundParams, energy_ratio

logger = logging.getLogger(__name__)


class Strategy(str, Enum):
    EXHAUSTIVE = "exhaustive"
    LOCAL_SEARCH = "local_search"
    PROOF_RULE = "proof_rule"


@dataclass(frozen=True)
class SelectionResult:
    subset: Subset
    strategy: Strategy
    energy: EnergyValue
    floor: int
    size_d: int
    ratio: float
    params: BoundParams
    condition2: str
    assumed_condition2: bool

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "sizeD": self.size_d,
            "sizeU": len(self.subset),
            "energyU": self.energy.count,
            "floor": self.floor,
            "ratio": self.ratio,
            "lambda": self.params.lam,
            "kappa": self.params.kappa,
            "assumed_condition2": self.assumed_condition2,
        }


def selection_floor(d_size: int, k: int) -> int:
    """⌈|D|/(k+1)⌉"""
    return -(-d_size // (k + 1))


def _check_preconditions(ctx: FieldCtx, d_set: Subset, f: RationalMap,
                         assume_nonlinearity: bool, allow_violation: bool) -> Tuple[str, bool]:
    if len(d_set) < 2:
        raise DomainError(f"选取子集要求 |D| >= 2，当前 |D|={len(d_set)}")
    values, poles = eval_many(ctx, f, d_set.array)
    if poles.any():
        raise PoleInSet(int(d_set.array[np.argmax(poles)]))
    if not np.isin(values, d_set.array).all():
        raise UnstableSet(f"f = {f.describe()} 不把 D 映到 D 内")
    status = condition2_status(ctx, f)
    if status.kind == "whitelisted":
        return status.kind, False
    if status.kind == "violates" and not allow_violation:
        raise ConditionViolated(f"f = {f.describe()} 违反非线性条件: {status.witness}")
    if status.kind == "unknown" and not assume_nonlinearity:
        raise ConditionViolated(
            f"无法判定 f = {f.describe()} 是否满足非线性条件（{status.reason}），需显式假设非线性")
    logger.warning(f"非线性条件状态为 {status.kind}，按调用方的假设继续")
    return status.kind, True


class _SwapState:
    """维护 r_U 的计数，O(|U|) 求单次交换后的能量变化"""

    def __init__(self, sums: List[List[int]], members: Sequence[int]):
        self.sums = sums
        self.members = list(members)
        self.rep = Counter(sums[i][j] for i in self.members for j in self.members)
        self.energy = sum(c * c for c in self.rep.values())

    def _delta_counts(self, out_idx: int, in_idx: int) -> Counter:
        sums = self.sums
        delta = Counter()
        for x in self.members:
            delta[sums[out_idx][x]] -= 2
            if x != out_idx:
                delta[sums[in_idx][x]] += 2
        delta[sums[out_idx][out_idx]] += 1
        delta[sums[in_idx][in_idx]] += 1
        return delta

    def swap_delta(self, out_idx: int, in_idx: int) -> int:
        rep = self.rep
        total = 0
        for s, d in self._delta_counts(out_idx, in_idx).items():
            if d:
                r = rep.get(s, 0)
                total += (r + d) * (r + d) - r * r
        return total

    def apply(self, out_idx: int, in_idx: int):
        for s, d in self._delta_counts(out_idx, in_idx).items():
            if d:
                self.rep[s] += d
        self.energy = sum(c * c for c in self.rep.values())
        self.members[self.members.index(out_idx)] = in_idx


def _sum_table(ctx: FieldCtx, d_set: Subset) -> List[List[int]]:
    a = d_set.array
    n = len(a)
    sums = ctx.add_many(np.repeat(a, n), np.tile(a, n)).astype(np.int64)
    return sums.reshape(n, n).tolist()


def _exhaustive(ctx: FieldCtx, d_set: Subset, size: int) -> Tuple[int, Tuple[int, ...]]:
    limit = SELECTION_CONFIG["exhaustive_limit"]
    if len(d_set) > limit:
        raise TooLarge(f"穷举策略要求 |D| <= {limit}，当前 |D|={len(d_set)}")
    sums = _sum_table(ctx, d_set)
    n = len(d_set)

    def scan(first: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
        best = None
        for rest in itertools.combinations(range(first + 1, n), size - 1):
            idx = (first,) + rest
            rep = Counter(sums[i][j] for i in idx for j in idx)
            energy = sum(c * c for c in rep.values())
            if best is None or energy < best[0]:
                best = (energy, idx)
        return best

    # 按首元素划分，合并时取 (能量, 下标) 最小者，与调度顺序无关
    with ThreadPoolExecutor(max_workers=THREADS) as pool:
        results = [res for res in pool.map(scan, range(n - size + 1)) if res is not None]
    energy, idx = min(results)
    return energy, tuple(d_set.elems[i] for i in idx)


def _local_search(ctx: FieldCtx, d_set: Subset, size: int, budget: int, seed: int,
                  restarts: int) -> Tuple[int, Tuple[int, ...]]:
    sums = _sum_table(ctx, d_set)
    n = len(d_set)
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(restarts):
        start = sorted(rng.choice(n, size=size, replace=False).tolist())
        state = _SwapState(sums, start)
        for _ in range(budget):
            inside = set(state.members)
            move = None
            for out_idx in sorted(state.members):
                for in_idx in range(n):
                    if in_idx in inside:
                        continue
                    delta = state.swap_delta(out_idx, in_idx)
                    if move is None or delta < move[0]:
                        move = (delta, out_idx, in_idx)
            if move is None or move[0] >= 0:
                break
            state.apply(move[1], move[2])
        candidate = (state.energy, tuple(sorted(state.members)))
        logger.debug(f"局部搜索第 {attempt + 1}/{restarts} 轮: E(U)={state.energy}")
        if best is None or candidate < best:
            best = candidate
    energy, idx = best
    return energy, tuple(d_set.elems[i] for i in idx)


def select_low_energy_subset(
    ctx: FieldCtx,
    d_set: Subset,
    f: RationalMap,
    strategy: Strategy = Strategy.LOCAL_SEARCH,
    budget: Optional[int] = None,
    *,
    seed: int = 0,
    split: Optional[Tuple[Subset, Subset]] = None,
    params: Optional[BoundParams] = None,
    assume_nonlinearity: bool = False,
    allow_violation: bool = False,
    restarts: Optional[int] = None,
) -> SelectionResult:
    """
    选取 U ⊆ D，|U| >= ⌈|D|/(k+1)⌉
    :param split: proof_rule 策略所需的划分 (S, T)
    :param assume_nonlinearity: 非线性条件无法判定时显式假设其成立
    :param allow_violation: 非线性条件明确不成立时仍继续（用于反例实验）
    """
    strategy = Strategy(strategy)
    params = params or BoundParams()
    condition2, assumed = _check_preconditions(ctx, d_set, f, assume_nonlinearity, allow_violation)
    floor = selection_floor(len(d_set), f.k)

    if strategy is Strategy.EXHAUSTIVE:
        _, elems = _exhaustive(ctx, d_set, floor)
        u_set = Subset(ctx, elems)
    elif strategy is Strategy.LOCAL_SEARCH:
        budget = SELECTION_CONFIG["budget"] if budget is None else budget
        restarts = SELECTION_CONFIG["restarts"] if restarts is None else restarts
        _, elems = _local_search(ctx, d_set, floor, budget, seed, restarts)
        u_set = Subset(ctx, elems)
    elif strategy is Strategy.PROOF_RULE:
        if split is None:
            raise BadParameters("proof_rule 策略需要提供划分 (S, T)")
        s_set, t_set = split
        if set(s_set.elems) & set(t_set.elems) or s_set.union(t_set) != d_set:
            raise BadParameters("(S, T) 必须是 D 的不交划分")
        if len(s_set) * (f.k + 1) >= len(d_set):
            u_set = s_set
        else:
            u_set = image(ctx, f, t_set)
    else:
        raise BadParameters(f"未知的选取策略: {strategy}")

    energy = additive_energy(ctx, u_set)
    ratio = energy_ratio(energy.count, len(d_set), ctx.q)
    logger.info(f"选取完成: 策略={strategy.value}, |D|={len(d_set)}, |U|={len(u_set)}, "
                f"E(U)={energy.count}, 比值={ratio:.6g}")
    return SelectionResult(
        subset=u_set,
        strategy=strategy,
        energy=energy,
        floor=floor,
        size_d=len(d_set),
        ratio=ratio,
        params=params,
        condition2=condition2,
        assumed_condition2=assumed,
    )


def random_subset_energies(ctx: FieldCtx, d_set: Subset, size: int, samples: int, seed: int) -> List[int]:
    """同样大小的均匀随机子集的能量，作为局部搜索的对照基线"""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        pick = rng.choice(d_set.array, size=size, replace=False)
        out.append(additive_energy(ctx, Subset.of(ctx, pick.tolist())).count)
    return out
