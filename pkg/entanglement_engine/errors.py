"""Error types for SpinRadar.

Every failure the package raises on purpose derives from ``SpinRadarError``.
The CLI maps each family onto a process exit code.
"""

from typing import Optional


class SpinRadarError(Exception):
    """Base class for all SpinRadar errors."""

    exit_code = 1


class InputError(SpinRadarError, ValueError):
    """Invalid parameters, indices, shapes or non-finite input."""

    exit_code = 1


class DomainError(InputError):
    """A finite-difference stencil leaves the branch domain it was asked about."""


class ConvergenceError(SpinRadarError):
    """An iterative solver hit its iteration cap."""

    exit_code = 2

    def __init__(self, message: str, residual: float, sweeps: int):
        super().__init__(f"{message} (residual={residual:.3e} after {sweeps} sweeps)")
        self.residual = residual
        self.sweeps = sweeps


class NumericalConsistencyError(SpinRadarError):
    """Two routes to the same quantity disagree, or a physical bound is broken."""

    exit_code = 2

    def __init__(self, message: str, quantity: str, value: Optional[float] = None):
        super().__init__(message)
        self.quantity = quantity
        self.value = value


class OutputError(SpinRadarError, OSError):
    """Reading or writing a result file failed."""

    exit_code = 3

    def __init__(self, message: str, path: str):
        super().__init__(f"{message}: {path}")
        self.path = path
