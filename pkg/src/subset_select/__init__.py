"""
上界求值与低能量子集选取
"""
from .bounds import (
    BoundParams,
    Interval,
    classical_bound,
    energy_ratio,
    improvement_interval,
    improves_classical,
    lemma1_bound,
    low_trace_p_window,
    m_of_d,
    theorem1_bound,
    theorem1_d_window,
)
from .selector import (
    SelectionResult,
    Strategy,
    random_subset_energies,
    select_low_energy_subset,
    selection_floor,
)

__all__ = [
    'BoundParams', 'Interval', 'm_of_d', 'classical_bound', 'lemma1_bound', 'theorem1_bound',
    'energy_ratio', 'improves_classical', 'improvement_interval', 'theorem1_d_window', 'low_trace_p_window',
    'Strategy', 'SelectionResult', 'select_low_energy_subset', 'selection_floor',
    'random_subset_energies',
]
