"""Dissipative two-level system parameters and results."""

import enum
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TLSBranch(enum.Enum):
    """Regimes of the renormalized ground-state energy."""
    WEAK = "weak"                     # 0 <= alpha < 1/2
    HALF = "half"                     # alpha == 1/2
    INTERMEDIATE = "intermediate"     # 1/2 < alpha < 1
    KOSTERLITZ_THOULESS = "kt"        # |alpha - 1| <= kt_window, overlay only
    LOCALIZED = "localized"           # alpha >= 1


class TLSModel(BaseModel):
    """Two-level system with tunneling delta coupled to an ohmic bath."""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., ge=0.0, allow_inf_nan=False, description="Tunneling amplitude")
    alpha: float = Field(..., ge=0.0, allow_inf_nan=False, description="Dissipation strength")
    omega_c: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="Bath cutoff")
    c0: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="Energy prefactor")
    c1: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="KT amplitude")
    c2: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="KT exponent scale")
    kt_window: float = Field(default=0.05, gt=0.0, lt=0.5, description="KT branch half-width")
    kt_overlay: bool = Field(default=False, description="Use the KT branch inside its window")

    @model_validator(mode="after")
    def check_regime(self) -> "TLSModel":
        if self.delta / self.omega_c >= 1.0:
            raise ValueError("delta/omega_c must be below 1")
        return self

    @property
    def ratio(self) -> float:
        return self.delta / self.omega_c


@dataclass(frozen=True)
class TLSResult:
    energy: float
    sigma_x: float
    sigma_z: float
    concurrence: float
    branch: TLSBranch
    zero_delta: bool = False


@dataclass(frozen=True)
class AlphaDerivative:
    """Finite differences of the concurrence in alpha."""

    central: float
    backward: float
    forward: float
