"""
有限域模块
"""
from .field_core import (
    FieldCtx,
    Subset,
    dual_basis,
    dump_subset,
    load_subset,
    make_field,
    power_basis,
    quadratic_residues,
    subfield,
    trace,
    trace_product_counts,
    trace_product_histograms,
)

__all__ = [
    'FieldCtx', 'Subset', 'make_field', 'trace', 'dual_basis', 'power_basis',
    'quadratic_residues', 'subfield', 'trace_product_counts', 'trace_product_histograms',
    'dump_subset', 'load_subset',
]
