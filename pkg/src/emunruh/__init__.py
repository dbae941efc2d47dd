"""Entanglement dynamics of two atoms on relativistic trajectories.

The package computes the open-system evolution of two two-level atoms
coupled to electromagnetic vacuum fluctuations while moving on circular,
uniformly accelerated or static (thermal bath) trajectories. The most used
entry points are re-exported here:

* :class:`KinematicParams` and :func:`correlator_for` for field correlators,
* :func:`rates_for` for the dissipator coefficients,
* :func:`evolve` and :func:`concurrence_x` for dynamics and entanglement,
* :class:`ScenarioConfig`, :func:`run_scenario`, :func:`sweep_max_concurrence`
  and :func:`parallel_grid` for complete runs.
"""

from . import presets, wightman
from .config import ScenarioConfig, SweepAxis, load_config
from .entanglement import EntanglementEvents, concurrence_wootters, concurrence_x, detect_events
from .errors import (
    ConfigError,
    EmunruhError,
    IntegrationError,
    InvalidStateError,
    NumericalError,
    ResidueConvergenceError,
    SpectralError,
    TruncationError,
)
from .frames import Family, KinematicParams, comoving_tetrad, worldline
from .lindblad import StateTrajectory, XState, evolve, initial_state, to_product_matrix
from .runner import parallel_grid, run_scenario, sweep_max_concurrence
from .spectral import DipoleConfig, RateCoefficients, rates_for
from .transforms import fourier_quadrature, fourier_residue
from .wightman import correlator_for

__all__ = [
    "ConfigError",
    "DipoleConfig",
    "EmunruhError",
    "EntanglementEvents",
    "Family",
    "IntegrationError",
    "InvalidStateError",
    "KinematicParams",
    "NumericalError",
    "RateCoefficients",
    "ResidueConvergenceError",
    "ScenarioConfig",
    "SpectralError",
    "StateTrajectory",
    "SweepAxis",
    "TruncationError",
    "XState",
    "comoving_tetrad",
    "concurrence_wootters",
    "concurrence_x",
    "correlator_for",
    "detect_events",
    "evolve",
    "fourier_quadrature",
    "fourier_residue",
    "initial_state",
    "load_config",
    "parallel_grid",
    "presets",
    "rates_for",
    "run_scenario",
    "sweep_max_concurrence",
    "to_product_matrix",
    "wightman",
    "worldline",
]
