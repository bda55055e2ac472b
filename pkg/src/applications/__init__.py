"""
应用：迹乘积与和积方程
"""
from .sum_product import (
    SumProductCount,
    check_thm4_condition,
    count_sum_product,
    legacy_sumproduct_condition,
    sum_product_chain_report,
    thm4_improvement_window,
    trace_obstruction,
)
from .trace_products import (
    SampleSizes,
    TraceProfile,
    check_thm3_condition,
    inversion_closed_sample_sizes,
    legacy_trace_conditions,
    thm3_improvement_windows,
    trace_deviation_report,
    trace_product_covers,
    trace_profile,
    trace_profile_via_characters,
)

__all__ = [
    'TraceProfile', 'trace_profile', 'trace_product_covers', 'trace_profile_via_characters',
    'check_thm3_condition', 'legacy_trace_conditions', 'trace_deviation_report',
    'thm3_improvement_windows', 'SampleSizes', 'inversion_closed_sample_sizes',
    'SumProductCount', 'count_sum_product', 'check_thm4_condition', 'legacy_sumproduct_condition',
    'thm4_improvement_window', 'trace_obstruction', 'sum_product_chain_report',
]
