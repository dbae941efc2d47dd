"""Comoving electric-field two-point functions.

The :class:`CorrelationTensor` subclasses mirror the trajectory families of
:mod:`emunruh.frames`. :func:`correlator_for` picks the production evaluator
for a :class:`~emunruh.frames.KinematicParams` record.
"""

from .base import CorrelationTensor, component_index
from .boost_chain import BoostChainCorrelator, boost_chain_2pt
from .circular import (
    CircularGeneralCorrelator,
    CircularUltraCorrelator,
    circular_2pt_general,
    circular_2pt_ultra,
)
from .factory import correlator_for
from .thermal import StaticVacuumCorrelator, ThermalCorrelator, thermal_2pt
from .vacuum import field_strength_2pt, lab_electric_2pt, lab_electric_tensor, potential_2pt

__all__ = [
    "CorrelationTensor",
    "component_index",
    "BoostChainCorrelator",
    "CircularGeneralCorrelator",
    "CircularUltraCorrelator",
    "StaticVacuumCorrelator",
    "ThermalCorrelator",
    "boost_chain_2pt",
    "circular_2pt_general",
    "circular_2pt_ultra",
    "correlator_for",
    "field_strength_2pt",
    "lab_electric_2pt",
    "lab_electric_tensor",
    "potential_2pt",
    "thermal_2pt",
]
