"""
加法能量模块
"""
from .energy import (
    EnergyValue,
    RepresentationCounts,
    additive_energy,
    additive_energy_bruteforce,
    representation_counts,
)

__all__ = ['EnergyValue', 'RepresentationCounts', 'additive_energy',
           'additive_energy_bruteforce', 'representation_counts']
