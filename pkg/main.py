"""
双重特征和实验平台主程序
"""
import functools
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
from pydantic import ValidationError

from config.config import CLI_CONFIG
from src.applications.sum_product import (
    check_thm4_condition,
    count_sum_product,
    legacy_sumproduct_condition,
    sum_product_chain_report,
    thm4_improvement_window,
    trace_obstruction,
)
from src.applications.trace_products import (
    check_thm3_condition,
    inversion_closed_sample_sizes,
    legacy_trace_conditions,
    thm3_improvement_windows,
    trace_deviation_report,
    trace_product_covers,
    trace_profile,
)
from src.characters.characters import CharId
from src.constructions.constructions import build, construction_to_json
from src.energy.energy import additive_energy, additive_energy_bruteforce, representation_counts
from src.errors import BadParameters, CharSumError, GuardError
from src.experiment.reports import headline, tightness_report, verify_identities, write_json, write_report
from src.experiment.schemas import ExperimentConfig, RandomSet
from src.field.field_core import FieldCtx, Subset, dual_basis, load_subset, make_field, power_basis
from src.rational_maps.rational_maps import parse_rational_map
from src.subset_select.bounds import (
    BoundParams,
    classical_bound,
    improvement_interval,
    improves_classical,
    low_trace_p_window,
    m_of_d,
    theorem1_bound,
    theorem1_d_window,
)
from src.subset_select.selector import Strategy, select_low_energy_subset

logger = logging.getLogger(__name__)

EXIT_CODES = CLI_CONFIG["exit_codes"]


def _join(values) -> str:
    return " ".join(str(int(v)) for v in values)


class CharSumLab:
    """一次实验：按配置构造域与集合，执行任务并写出报告"""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.params = BoundParams(lam=config.params.lam, kappa=config.params.kappa)
        # 所有随机性来自同一个 64 位种子：子流 0 生成随机集合，子流 1 供任务内部抽样
        sets_seq, task_seq = np.random.SeedSequence(config.params.seed).spawn(2)
        self.rng = np.random.Generator(np.random.PCG64(sets_seq))
        self.task_rng = np.random.Generator(np.random.PCG64(task_seq))
        self.tasks = {
            "field-info": self.field_info,
            "verify-identities": self.verify,
            "double-sum": self.double_sum,
            "energy": self.energy,
            "select-subset": self.select_subset,
            "trace-product": self.trace_product,
            "sum-product": self.sum_product,
            "construct": self.construct,
            "bounds-report": self.bounds_report,
        }

    @functools.cached_property
    def ctx(self) -> FieldCtx:
        spec = self.config.field
        return make_field(spec.p, spec.r, spec.modulus)

    @functools.cached_property
    def sets(self) -> Dict[str, Subset]:
        """按角色名排序依次生成，随机集合的抽取顺序因此固定"""
        out = {}
        for role in sorted(self.config.sets):
            out[role] = self._materialize(role, self.config.sets[role])
        return out

    def _materialize(self, role: str, spec) -> Subset:
        ctx = self.ctx
        if isinstance(spec, RandomSet):
            pool = np.arange(1 if spec.nonzero else 0, ctx.q)
            if spec.random > len(pool):
                raise BadParameters(f"集合 {role} 需要 {spec.random} 个元素，但只有 {len(pool)} 个可选")
            return Subset.of(ctx, self.rng.choice(pool, size=spec.random, replace=False).tolist())
        if isinstance(spec, str):
            return load_subset(ctx, Path(spec).read_text(encoding="utf-8"))
        return Subset.of(ctx, spec)

    def _echo(self) -> dict:
        spec = self.config.field
        return {
            "p": spec.p,
            "r": spec.r,
            "lambda": self.params.lam,
            "kappa": self.params.kappa,
            "seed": self.config.params.seed,
            "construction": self.config.construction or "",
            "map": self.config.map or "",
        }

    # ------------------------------------------------------------------
    # 任务
    # ------------------------------------------------------------------

    def field_info(self) -> Tuple[List[dict], bool]:
        ctx = self.ctx
        basis = power_basis(ctx)
        row = {
            "q": ctx.q,
            "modulus": _join(ctx.modulus),
            "generator": ctx.generator,
            "power_basis": _join(basis),
            "dual_basis": _join(dual_basis(ctx, basis)),
            "trace_of_basis": _join(ctx.trace_many(basis)),
        }
        return [{**self._echo(), **row}], True

    def verify(self) -> Tuple[List[dict], bool]:
        rows = verify_identities(self.ctx, self.task_rng)
        echo = self._echo()
        return [{**echo, **row} for row in rows], all(row["passed"] for row in rows)

    def double_sum(self) -> Tuple[List[dict], bool]:
        s = self.sets
        row = tightness_report(self.ctx, s["C"], s["D"], CharId(self.ctx.check(self.config.params.twist)),
                               self.params)
        return [{**self._echo(), **row}], True

    def energy(self) -> Tuple[List[dict], bool]:
        ctx, s_set = self.ctx, self.sets["S"]
        rep = representation_counts(ctx, s_set, s_set)
        energy = additive_energy(ctx, s_set).count
        row = {"sizeS": len(s_set), "energy": energy, "method": rep.method,
               "energy_over_cube": energy / len(s_set) ** 3 if len(s_set) else 0.0}
        ok = True
        if len(s_set) <= 20:
            brute = additive_energy_bruteforce(ctx, s_set).count
            row["energy_bruteforce"] = brute
            ok = brute == energy
        return [{**self._echo(), **row}], ok

    def select_subset(self) -> Tuple[List[dict], bool]:
        ctx, sets, p = self.ctx, self.sets, self.config.params
        f = parse_rational_map(ctx, self.config.map)
        split = (sets["S"], sets["T"]) if p.strategy is Strategy.PROOF_RULE else None
        result = select_low_energy_subset(
            ctx, sets["D"], f, p.strategy, p.budget,
            seed=p.seed, split=split, params=self.params, restarts=p.restarts,
            assume_nonlinearity=p.assume_nonlinearity, allow_violation=p.allow_violation,
        )
        row = {**result.to_dict(), "k": f.k, "condition2": result.condition2, "U": _join(result.subset)}
        ok = result.subset.issubset(sets["D"]) and len(result.subset) >= result.floor
        return [{**self._echo(), **row}], ok

    def trace_product(self) -> Tuple[List[dict], bool]:
        ctx, sets = self.ctx, self.sets
        c_set, d_set = sets["C"], sets["D"]
        u_set = sets.get("U", d_set)
        k = parse_rational_map(ctx, self.config.map).k if self.config.map else 1
        covers, missing = trace_product_covers(ctx, c_set, d_set)
        full, nonzero = legacy_trace_conditions(len(c_set), len(d_set), ctx.p, ctx.q)
        row = {
            "sizeC": len(c_set),
            "sizeD": len(d_set),
            "profile": _join(trace_profile(ctx, c_set, d_set).counts),
            "covers": covers,
            "missing": _join(missing),
            "legacy_full_cover": full,
            "legacy_nonzero_cover": nonzero,
        }
        if len(d_set) >= 2:
            row["thm3_condition"] = check_thm3_condition(len(c_set), len(d_set), ctx.p, ctx.q, self.params)
            deviation = trace_deviation_report(ctx, c_set, u_set, len(d_set), self.params, k)
            row.update({key: value for key, value in deviation.items() if key not in row})
        return [{**self._echo(), **row}], True

    def sum_product(self) -> Tuple[List[dict], bool]:
        ctx, sets = self.ctx, self.sets
        a, b, c, d = sets["A"], sets["B"], sets["C"], sets["D"]
        count = count_sum_product(ctx, a, b, c, d, self.config.params.algorithm)
        disjoint, _, _ = trace_obstruction(ctx, a, b, c, d)
        row = {
            "sizeA": len(a), "sizeB": len(b), "sizeC": len(c), "sizeD": len(d),
            "N": count.n,
            "algorithm": count.algorithm,
            "trace_obstruction": disjoint,
            "legacy_condition": legacy_sumproduct_condition(len(a), len(b), len(c), len(d), ctx.q),
        }
        if len(d) >= 2:
            row["thm4_condition"] = check_thm4_condition(len(a), len(b), len(c), len(d), ctx.q, self.params)
        if "U" in sets:
            row.update(sum_product_chain_report(ctx, a, b, c, sets["U"], len(d), self.params))
        # 迹不交时 N 必为 0
        ok = not disjoint or count.n == 0
        return [{**self._echo(), **row}], ok

    def construct(self) -> Tuple[dict, bool]:
        spec = self.config.field
        nc = build(self.config.construction, spec.p, spec.r, spec.modulus)
        row = {**self._echo(), **headline(nc)}
        return {"construction": construction_to_json(nc), "headline": row}, bool(row.get("holds", True))

    def bounds_report(self) -> Tuple[List[dict], bool]:
        """只依赖集合大小，不构造集合，可在很大的 q 上求值"""
        spec, sizes, lam = self.config.field, self.config.sizes, self.params.lam
        p, q, d = spec.p, spec.p ** spec.r, sizes.D
        row = {"q": q, "sizeA": sizes.A, "sizeB": sizes.B, "sizeC": sizes.C, "sizeD": d,
               "M": m_of_d(q, d)}
        lo, hi, nonempty = improvement_interval(q, d, lam)
        row.update({"improvement_lo": lo, "improvement_hi": hi, "improvement_nonempty": nonempty})
        lo, hi, nonempty = theorem1_d_window(q, lam)
        row.update({"d_window_lo": lo, "d_window_hi": hi, "d_window_nonempty": nonempty})
        lo, hi, nonempty = low_trace_p_window(q, lam)
        row.update({"p_window_lo": lo, "p_window_hi": hi, "p_window_nonempty": nonempty,
                    "p_in_window": lo < p < hi})
        first, second = thm3_improvement_windows(p, q, lam)
        row.update({"thm3_full_lo": first.lo, "thm3_full_hi": first.hi, "thm3_full_nonempty": first.nonempty,
                    "thm3_nonzero_lo": second.lo, "thm3_nonzero_hi": second.hi,
                    "thm3_nonzero_nonempty": second.nonempty})
        samples = inversion_closed_sample_sizes(p, q)
        row.update({"sample_sizeD": samples.d_size, "sample_sizeC": samples.c_size, "alpha": samples.alpha})
        ab, dwin = thm4_improvement_window(q, d, lam)
        row.update({"thm4_ab_lo": ab.lo, "thm4_ab_hi": ab.hi, "thm4_ab_nonempty": ab.nonempty,
                    "thm4_d_lo": dwin.lo, "thm4_d_hi": dwin.hi, "thm4_d_nonempty": dwin.nonempty})
        if sizes.C is not None:
            full, nonzero = legacy_trace_conditions(sizes.C, d, p, q)
            row.update({
                "classical_bound": classical_bound(sizes.C, d, q),
                "theorem1_bound": theorem1_bound(sizes.C, d, q, self.params),
                "improves_classical": improves_classical(sizes.C, d, q, lam),
                "thm3_condition": check_thm3_condition(sizes.C, d, p, q, self.params),
                "legacy_full_cover": full,
                "legacy_nonzero_cover": nonzero,
            })
        if None not in (sizes.A, sizes.B, sizes.C):
            row.update({
                "thm4_condition": check_thm4_condition(sizes.A, sizes.B, sizes.C, d, q, self.params),
                "legacy_sumproduct": legacy_sumproduct_condition(sizes.A, sizes.B, sizes.C, d, q),
            })
        return [{**self._echo(), **row}], True

    def run(self) -> int:
        """执行任务并写出报告，返回退出码"""
        task, output = self.config.task, self.config.output
        start = time.perf_counter()
        result, ok = self.tasks[task]()
        if task == "construct":
            write_json(result, output.path)
        else:
            write_report(result, output.path, output.format)
        logger.info(f"任务 {task} 完成，用时 {time.perf_counter() - start:.3f}s")
        return EXIT_CODES["ok"] if ok else EXIT_CODES["check_failed"]


def _format_loc(loc) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def run_config(raw: dict) -> int:
    """校验配置并执行，错误映射为退出码"""
    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        for err in e.errors():
            print(f"配置错误 {_format_loc(err['loc'])}: {err['msg']}", file=sys.stderr)
        return EXIT_CODES["invalid"]
    try:
        return CharSumLab(config).run()
    except GuardError as e:
        logger.error(f"计算保护触发: {e}")
        print(f"计算保护触发: {e}", file=sys.stderr)
        return EXIT_CODES["guard"]
    except (CharSumError, ValueError, OSError) as e:
        logger.error(f"输入错误: {e}")
        print(f"输入错误: {e}", file=sys.stderr)
        return EXIT_CODES["invalid"]
