"""
加法特征模块
"""
from .characters import (
    CANONICAL,
    CharId,
    CycloSum,
    char_eval,
    char_sum,
    character_magnitudes,
    cyclo_sum_total,
    double_char_sum,
    fourth_moment,
    magnitude,
    norm_square,
)

__all__ = [
    'CycloSum', 'CharId', 'CANONICAL', 'char_eval', 'char_sum', 'double_char_sum',
    'magnitude', 'norm_square', 'fourth_moment', 'character_magnitudes', 'cyclo_sum_total',
]
