"""Exception hierarchy for :mod:`emunruh`."""

from typing import Any, Dict, Optional


class EmunruhError(Exception):
    """Base class for errors raised by the simulation pipeline.

    Attributes
    ----------
    config_echo : dict or None
        Scenario configuration that was being processed when the error
        surfaced. Filled in by :func:`emunruh.runner.run_scenario`.
    """

    config_echo: Optional[Dict[str, Any]] = None

    def __str__(self) -> str:
        message = super().__str__()
        if self.config_echo is not None:
            message = f"{message} [config: {self.config_echo}]"
        return message


class ConfigError(EmunruhError, ValueError):
    """Invalid scenario configuration."""


class NumericalError(EmunruhError, RuntimeError):
    """A numerical stage failed to meet its tolerance."""


class ResidueConvergenceError(NumericalError):
    """Cauchy quadrature around a pole did not converge."""


class TruncationError(NumericalError):
    """Truncated image sum is not converged for the requested tolerance."""


class SpectralError(NumericalError):
    """Spectral data are inconsistent with the assumptions of the dissipator."""


class InvalidStateError(NumericalError):
    """A density matrix violates trace, Hermiticity or positivity."""


class IntegrationError(NumericalError):
    """Time integration aborted.

    Parameters
    ----------
    message : str
        Integrator diagnostic.
    tau : float
        Proper time at which the integration stopped.
    """

    def __init__(self, message: str, tau: float):
        super().__init__(f"{message} (tau={tau:.6g})")
        self.message = message
        self.tau = tau

    def __reduce__(self):
        return (type(self), (self.message, self.tau), self.__dict__)
