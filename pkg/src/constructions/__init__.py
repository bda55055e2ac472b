"""
具名构造模块
"""
from .constructions import (
    CONSTRUCTIONS,
    NamedConstruction,
    build,
    build_intro_ap,
    build_intro_sumproduct_optimal,
    build_remark1,
    build_remark3,
    build_sec4_affine,
    build_sec4_trace_interval,
    build_subfield_tight,
    construction_to_json,
)

__all__ = [
    'NamedConstruction', 'CONSTRUCTIONS', 'build', 'construction_to_json',
    'build_intro_ap', 'build_subfield_tight', 'build_remark1', 'build_remark3',
    'build_sec4_affine', 'build_sec4_trace_interval', 'build_intro_sumproduct_optimal',
]
