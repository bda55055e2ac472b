"""
有理函数模块
"""
from .rational_maps import (
    POLE,
    WHITELIST,
    Condition2Status,
    Condition2Witness,
    RationalMap,
    condition2_status,
    eval_many,
    eval_map,
    image,
    maps_into,
    parse_rational_map,
    reduce,
)

__all__ = [
    'RationalMap', 'POLE', 'reduce', 'parse_rational_map', 'eval_map', 'eval_many',
    'maps_into', 'image', 'Condition2Status', 'Condition2Witness', 'condition2_status', 'WHITELIST',
]
