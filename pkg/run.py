"""
双重特征和实验平台命令行入口
"""
import argparse
import json
import logging
import sys

from config.config import CLI_CONFIG, LOG_LEVEL, LOGS_DIR
from main import run_config
from src.experiment.reports import write_json
from src.experiment.schemas import config_json_schema

logger = logging.getLogger(__name__)

# 子命令 -> 配置中的任务名
TASKS = {
    "field-info": "field-info",
    "energy": "energy",
    "double-sum": "double-sum",
    "find-subset": "select-subset",
    "trace-product": "trace-product",
    "sum-product": "sum-product",
    "construct": "construct",
    "verify": "verify-identities",
    "report": "bounds-report",
}


def setup_logging():
    """日志写到标准错误和 LOGS_DIR 下的文件，标准输出只留给报告"""
    LOGS_DIR.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=LOG_LEVEL,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(LOGS_DIR / "charsum.log", encoding="utf-8"),
        ],
    )


def parse_set(text: str):
    """
    集合参数：
      "1,2,3"             内联编码
      "random:10"         随机 10 个元素，"random:10:nonzero" 排除 0
      "@path/to/file"     子集文件
    """
    text = text.strip()
    if text.startswith("@"):
        return text[1:]
    if text.startswith("random:"):
        parts = text.split(":")
        return {"random": int(parts[1]), "nonzero": len(parts) > 2 and parts[2] == "nonzero"}
    return [int(v) for v in text.split(",") if v.strip()]


def _pairs(items, convert):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"参数格式应为 ROLE=VALUE: {item!r}")
        role, value = item.split("=", 1)
        out[role.strip()] = convert(value)
    return out


def _merge(base: dict, override: dict) -> dict:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def build_config(args) -> dict:
    """命令行参数 -> 原始配置字典；未给出的参数不写入，由模型默认值补齐"""
    field = {"r": args.r}
    if args.p is not None:
        field["p"] = args.p
    if args.modulus:
        field["modulus"] = [int(c) for c in args.modulus.split(",")]
    params = {
        "lambda": args.lam,
        "kappa": args.kappa,
        "seed": args.seed,
        "budget": args.budget,
        "restarts": args.restarts,
        "strategy": args.strategy,
        "twist": args.twist,
        "algorithm": args.algorithm,
    }
    params = {k: v for k, v in params.items() if v is not None}
    if args.assume_nonlinearity:
        params["assume_nonlinearity"] = True
    if args.allow_violation:
        params["allow_violation"] = True
    raw = {
        "task": TASKS[args.command],
        "field": field,
        "sets": _pairs(args.set, parse_set),
        "params": params,
        "output": {"path": args.output, "format": args.format},
    }
    if args.map:
        raw["map"] = args.map
    if getattr(args, "name", None):
        raw["construction"] = args.name
    if args.size:
        raw["sizes"] = _pairs(args.size, int)
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            raw = _merge(raw, json.load(f))
    return raw


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, help='JSON 配置文件，覆盖命令行参数')
    common.add_argument('--p', type=int, help='特征 p')
    common.add_argument('--r', type=int, default=1, help='扩张次数 r')
    common.add_argument('--modulus', type=str, help='模多项式系数，逗号分隔，常数项在前')
    common.add_argument('--set', action='append', metavar='ROLE=SPEC', help='集合，可重复')
    common.add_argument('--map', type=str, help='有理函数，如 "1 / 0,1" 表示 1/X')
    common.add_argument('--lambda', dest='lam', type=float, help='隐含常数 λ')
    common.add_argument('--kappa', type=float, help='隐含常数 κ')
    common.add_argument('--seed', type=int, help='随机种子')
    common.add_argument('--budget', type=int, help='局部搜索迭代预算')
    common.add_argument('--restarts', type=int, help='局部搜索随机起点数')
    common.add_argument('--strategy', choices=['exhaustive', 'local_search', 'proof_rule'], help='子集选取策略')
    common.add_argument('--assume-nonlinearity', action='store_true', help='非线性条件无法判定时假设其成立')
    common.add_argument('--allow-violation', action='store_true', help='非线性条件不成立时仍继续')
    common.add_argument('--twist', type=int, help='特征 ψ_a 的 a')
    common.add_argument('--algorithm', choices=['brute', 'convolution'], help='和积方程计数算法')
    common.add_argument('--size', action='append', metavar='ROLE=N', help='集合大小（report 用）')
    common.add_argument('--output', type=str, help='报告路径，缺省写到标准输出')
    common.add_argument('--format', choices=['csv', 'json'], default=CLI_CONFIG["default_format"], help='报告格式')

    parser = argparse.ArgumentParser(description='有限域上双重特征和的精确实验平台')
    sub = parser.add_subparsers(dest='command', required=True)
    for command in TASKS:
        p = sub.add_parser(command, parents=[common])
        if command == "construct":
            p.add_argument('name', nargs='?', help='构造名称')
    schema = sub.add_parser('schema', help='输出实验配置的 JSON Schema')
    schema.add_argument('--output', type=str, help='写入路径，缺省写到标准输出')
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    setup_logging()
    if args.command == "schema":
        write_json(config_json_schema(), args.output)
        return CLI_CONFIG["exit_codes"]["ok"]
    try:
        raw = build_config(args)
    except (OSError, ValueError) as e:
        print(f"配置错误: {e}", file=sys.stderr)
        return CLI_CONFIG["exit_codes"]["invalid"]
    return run_config(raw)


if __name__ == "__main__":
    sys.exit(main())
