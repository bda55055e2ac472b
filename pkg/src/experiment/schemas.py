"""
实验配置的数据模型
"""
import json
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.config import BOUND_CONFIG, CLI_CONFIG
from src.subset_select.selector import Strategy

Task = Literal[
    "field-info",
    "verify-identities",
    "double-sum",
    "energy",
    "select-subset",
    "trace-product",
    "sum-product",
    "construct",
    "bounds-report",
]


class FieldSpec(BaseModel):
    p: int = Field(ge=2)
    r: int = Field(default=1, ge=1)
    modulus: Optional[List[int]] = None


class RandomSet(BaseModel):
    """由实验种子生成的随机集合"""
    random: int = Field(ge=0)
    nonzero: bool = False


# 内联编码数组 | 随机集合 | 子集文件路径
SetSpec = Union[List[int], RandomSet, str]


class ExperimentParams(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(default=BOUND_CONFIG["lambda"], gt=0, alias="lambda")
    kappa: float = Field(default=BOUND_CONFIG["kappa"], gt=0)
    seed: int = Field(default=CLI_CONFIG["default_seed"], ge=0, lt=2 ** 64)
    budget: Optional[int] = Field(default=None, ge=0)
    restarts: Optional[int] = Field(default=None, ge=1)
    strategy: Strategy = Strategy.LOCAL_SEARCH
    assume_nonlinearity: bool = False
    allow_violation: bool = False
    twist: int = Field(default=1, gt=0)
    algorithm: Literal["brute", "convolution"] = "convolution"


class Sizes(BaseModel):
    A: Optional[int] = Field(default=None, ge=0)
    B: Optional[int] = Field(default=None, ge=0)
    C: Optional[int] = Field(default=None, ge=0)
    D: Optional[int] = Field(default=None, ge=0)


class OutputSpec(BaseModel):
    path: Optional[str] = None
    format: Literal["csv", "json"] = CLI_CONFIG["default_format"]


# 各任务必需的集合角色
REQUIRED_SETS: Dict[str, List[str]] = {
    "double-sum": ["C", "D"],
    "energy": ["S"],
    "select-subset": ["D"],
    "trace-product": ["C", "D"],
    "sum-product": ["A", "B", "C", "D"],
}


class ExperimentConfig(BaseModel):
    field: FieldSpec
    task: Task
    sets: Dict[str, SetSpec] = Field(default_factory=dict)
    map: Optional[str] = None
    construction: Optional[str] = None
    params: ExperimentParams = Field(default_factory=ExperimentParams)
    sizes: Optional[Sizes] = None
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="after")
    def _check_task_fields(self) -> "ExperimentConfig":
        missing = [role for role in REQUIRED_SETS.get(self.task, []) if role not in self.sets]
        if missing:
            raise ValueError(f"任务 {self.task} 缺少集合: {', '.join(missing)}")
        if self.task == "select-subset":
            if not self.map:
                raise ValueError("select-subset 需要 map")
            if self.params.strategy is Strategy.PROOF_RULE and not {"S", "T"} <= set(self.sets):
                raise ValueError("proof_rule 策略需要集合 S 和 T")
        if self.task == "construct" and not self.construction:
            raise ValueError("construct 需要 construction")
        if self.task == "bounds-report" and (self.sizes is None or self.sizes.D is None):
            raise ValueError("bounds-report 需要 sizes.D")
        return self


# 随仓库发布的配置 JSON Schema
SCHEMA_PATH = Path(__file__).with_name("config.schema.json")


def config_json_schema() -> dict:
    return ExperimentConfig.model_json_schema()


def dump_config_schema() -> str:
    """与 SCHEMA_PATH 同格式的文本，重新生成 schema 文件时使用"""
    return json.dumps(config_json_schema(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
