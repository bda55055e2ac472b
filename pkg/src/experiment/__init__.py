"""
实验配置与报告
"""
from .reports import headline, render_report, tightness_report, verify_identities, write_json, write_report
from .schemas import (
    SCHEMA_PATH,
    ExperimentConfig,
    ExperimentParams,
    FieldSpec,
    OutputSpec,
    RandomSet,
    Sizes,
    config_json_schema,
    dump_config_schema,
)

__all__ = [
    'ExperimentConfig', 'ExperimentParams', 'FieldSpec', 'OutputSpec', 'RandomSet', 'Sizes',
    'SCHEMA_PATH', 'config_json_schema', 'dump_config_schema',
    'tightness_report', 'headline', 'verify_identities', 'render_report', 'write_report', 'write_json',
]
