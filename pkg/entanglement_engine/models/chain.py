"""Chain definition and free-fermion ground-state data."""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class Parity(enum.Enum):
    """Eigenvalue sector of the spin-flip parity operator, the product of all sigma^z."""
    EVEN = 1
    ODD = -1


class ChainSpec(BaseModel):
    """Transverse-field Ising chain with an optional bond closing sites 1 and N.

    The transverse field is fixed to 1. ``kappa == 0`` is the open chain.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n_sites: int = Field(..., ge=2, description="Number of spins N")
    lam: float = Field(
        ..., alias="lambda", ge=0.0, allow_inf_nan=False, description="Bulk bond strength"
    )
    kappa: float = Field(default=0.0, allow_inf_nan=False, description="Boundary bond strength")

    @property
    def is_open(self) -> bool:
        return self.kappa == 0.0


@dataclass(frozen=True)
class FermionModes:
    """Bogoliubov modes: eta_n = sum_i g[n, i] c_i + h[n, i] c_i^dagger."""

    omega: np.ndarray
    g: np.ndarray
    h: np.ndarray
    zero_modes: int = 0

    @property
    def n_modes(self) -> int:
        return int(self.omega.shape[0])

    def unitarity_defect(self) -> float:
        """Largest entry of (g g^T + h h^T - 1) and (g h^T + h g^T)."""
        identity = np.eye(self.n_modes)
        first = self.g @ self.g.T + self.h @ self.h.T - identity
        second = self.g @ self.h.T + self.h @ self.g.T
        return float(max(np.max(np.abs(first)), np.max(np.abs(second))))


@dataclass(frozen=True)
class ContractionMatrix:
    """Ground-state contractions values[p, q] = <B_p A_q> (0-based storage)."""

    values: np.ndarray

    @property
    def n_sites(self) -> int:
        return int(self.values.shape[0])

    def b_a(self, p: int, q: int) -> float:
        """<B_p A_q> for 1-based site indices."""
        return float(self.values[p - 1, q - 1])

    def max_magnitude(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class DenseState:
    """Exact ground state of one parity sector, embedded in the full 2^N basis.

    Basis index bit k (counting from the least significant bit) is 0 when
    site k + 1 points up.
    """

    n_sites: int
    amplitudes: np.ndarray
    energy: float
    parity: Optional[Parity]
    partner_energy: Optional[float] = None
    degenerate: bool = False
    residual: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def gap(self) -> Optional[float]:
        """Energy of the other parity sector's lowest state relative to this one."""
        if self.partner_energy is None:
            return None
        return self.partner_energy - self.energy
