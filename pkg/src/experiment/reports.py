"""
报告行的构造与原子写出

报告中只放可复现的数值，计时只写日志，保证同一配置、同一种子的输出逐字节一致。
"""
import json
import logging
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from src.applications.sum_product import count_sum_product, trace_obstruction
from src.applications.trace_products import trace_product_covers, trace_profile, trace_profile_via_characters
from src.characters.characters import CharId, double_char_sum, fourth_moment, magnitude
from src.constructions.constructions import NamedConstruction
from src.energy.energy import additive_energy, additive_energy_bruteforce
from src.field.field_core import FieldCtx, Subset, dual_basis, power_basis, quadratic_residues
from src.subset_select.bounds import BoundParams, classical_bound, lemma1_bound, theorem1_bound

logger = logging.getLogger(__name__)


def _ratio(observed: float, bound: Optional[float]) -> float:
    if not bound:
        return 0.0
    return observed / bound


def tightness_report(ctx: FieldCtx, c_set: Subset, d_set: Subset, char: CharId,
                     params: Optional[BoundParams] = None) -> dict:
    """观测到的 |Σ ψ(cd)| 与经典上界、四阶矩上界（以 U = D 的实测能量）和改进上界的对比"""
    params = params or BoundParams()
    s = double_char_sum(ctx, char, c_set, d_set)
    observed = magnitude(s)
    energy = additive_energy(ctx, d_set).count
    classical = classical_bound(len(c_set), len(d_set), ctx.q)
    lemma1 = lemma1_bound(len(c_set), energy, ctx.q)
    theorem1 = theorem1_bound(len(c_set), len(d_set), ctx.q, params) if len(d_set) >= 2 else None
    return {
        "sizeC": len(c_set),
        "sizeD": len(d_set),
        "twist": char.a,
        "sum": s.to_json(),
        "observed": observed,
        "energyD": energy,
        "classical_bound": classical,
        "lemma1_bound": lemma1,
        "theorem1_bound": theorem1,
        "ratio_classical": _ratio(observed, classical),
        "ratio_lemma1": _ratio(observed, lemma1),
        "ratio_theorem1": _ratio(observed, theorem1),
    }


def headline(nc: NamedConstruction) -> dict:
    """用通用计数操作重新验证构造的主要性质"""
    ctx, sets = nc.ctx, nc.sets
    row = {"construction": nc.name, "note": nc.note}
    row.update({f"size{role}": len(s) for role, s in sorted(sets.items())})
    if nc.name in ("intro_ap", "remark1"):
        observed = magnitude(double_char_sum(ctx, nc.char, sets["C"], sets["D"]))
        cd = len(sets["C"]) * len(sets["D"])
        row.update({"observed": observed, "trivial_bound": cd, "holds": observed >= 0.99 * cd})
        if nc.name == "remark1":
            row["holds"] = row["holds"] and len(sets["D"]) * ctx.p == len(sets["C"]) * ctx.q
    elif nc.name == "subfield_tight":
        s = double_char_sum(ctx, nc.char, sets["C"], sets["D"])
        target = math.sqrt(len(sets["C"]) * len(sets["D"]) * ctx.q)
        row.update({"observed": magnitude(s), "classical_bound": target,
                    "holds": s.is_integer() and abs(s.integer_value()) ** 2 == len(sets["C"]) * len(sets["D"]) * ctx.q})
    elif nc.name == "remark3":
        covers, missing = trace_product_covers(ctx, sets["C"], sets["D"])
        support = trace_profile(ctx, sets["C"], sets["D"]).support
        residues = set(quadratic_residues(ctx.p).elems)
        row.update({"covers": covers, "trace_support": " ".join(map(str, support)),
                    "holds": not covers and set(support) <= residues})
    elif nc.name == "sec4_affine":
        n = count_sum_product(ctx, sets["A"], sets["B"], sets["C"], sets["D"]).n
        row.update({"N": n, "holds": n == 0})
    elif nc.name == "sec4_trace_interval":
        disjoint, _, tr_cd = trace_obstruction(ctx, sets["A"], sets["B"], sets["C"], sets["D"])
        n = count_sum_product(ctx, sets["A"], sets["B"], sets["C"], sets["D"]).n
        row.update({"trace_disjoint": disjoint, "max_trace_cd": max(tr_cd) if tr_cd else 0,
                    "N": n, "holds": disjoint and n == 0})
    elif nc.name == "intro_sumproduct_optimal":
        n = count_sum_product(ctx, sets["A"], sets["B"], sets["C"], sets["D"], algorithm="brute").n
        product = len(sets["A"]) * len(sets["B"]) * len(sets["C"]) * len(sets["D"])
        row.update({"N": n, "product": product, "holds": n == 0 and 8 * product >= ctx.q ** 3})
    return row


def _random_subset(ctx: FieldCtx, rng: np.random.Generator, max_size: int, nonzero: bool = False) -> Subset:
    pool = np.arange(1 if nonzero else 0, ctx.q)
    size = int(rng.integers(1, min(max_size, len(pool)) + 1))
    return Subset.of(ctx, rng.choice(pool, size=size, replace=False).tolist())


def verify_identities(ctx: FieldCtx, rng: np.random.Generator, samples: int = 5) -> List[dict]:
    """在给定域上检查恒等式，每项一行，passed 为布尔值"""
    rows = []

    def record(check: str, passed: bool, detail: str = ""):
        rows.append({"check": check, "passed": bool(passed), "detail": detail})
        if not passed:
            logger.warning(f"恒等式检查失败: {check} {detail}")

    # 迹的每个纤维大小为 q/p
    fibers = np.bincount(ctx.trace_table, minlength=ctx.p)
    record("trace_fibers", (fibers == ctx.q // ctx.p).all(), f"q/p={ctx.q // ctx.p}")

    basis = power_basis(ctx)
    dual = dual_basis(ctx, basis)
    deltas = ctx.trace_products(dual, basis)
    record("dual_basis", (deltas == np.eye(ctx.r, dtype=np.int64)).all())

    for i in range(samples):
        u_set = _random_subset(ctx, rng, 15)
        c_set = _random_subset(ctx, rng, 15)
        twist = CharId(int(rng.integers(1, ctx.q)))
        energy = additive_energy(ctx, u_set).count
        m4 = fourth_moment(ctx, twist, u_set)
        record("fourth_moment", m4.is_integer() and m4.integer_value() == ctx.q * energy,
               f"sample={i}, |U|={len(u_set)}, E={energy}")
        if len(u_set) <= 12:
            record("energy_bruteforce", additive_energy_bruteforce(ctx, u_set).count == energy,
                   f"sample={i}")
        observed = magnitude(double_char_sum(ctx, twist, c_set, u_set))
        record("classical_bound", observed <= classical_bound(len(c_set), len(u_set), ctx.q) * (1 + 1e-6),
               f"sample={i}")
        record("lemma1_bound", observed <= lemma1_bound(len(c_set), energy, ctx.q) * (1 + 1e-6),
               f"sample={i}")
        profile = trace_profile(ctx, c_set, u_set)
        record("trace_profile_total", profile.total == len(c_set) * len(u_set), f"sample={i}")
        record("trace_profile_characters", trace_profile_via_characters(ctx, c_set, u_set) == profile,
               f"sample={i}")
    return rows


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def render_report(rows: List[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return pd.DataFrame(rows).to_csv(index=False, lineterminator="\n")
    raise ValueError(f"未知的报告格式: {fmt}")


def write_report(rows: List[dict], path: Optional[str], fmt: str):
    """path 为空时写到标准输出，否则先写临时文件再替换"""
    text = render_report(rows, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    _atomic_write(Path(path), text)
    logger.info(f"报告已写入 {path} ({len(rows)} 行)")


def write_json(payload: dict, path: Optional[str]):
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    _atomic_write(Path(path), text)
    logger.info(f"结果已写入 {path}")
