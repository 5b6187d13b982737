"""Configuration management for SpinRadar."""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical tolerances and run defaults loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SPINRADAR_",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(default="INFO", description="Default log level")

    # Jacobi eigensolver
    jacobi_max_sweeps: int = Field(
        default=60,
        description="Sweep cap before the eigensolver reports non-convergence"
    )
    jacobi_tolerance: float = Field(
        default=1e-14,
        description="Relative off-diagonal norm at which the eigensolver stops"
    )

    # Free-fermion solver
    zero_mode_cutoff: float = Field(
        default=1e-12,
        description="Mode energies below this are clamped to zero and flagged"
    )
    pairing_cutoff: float = Field(
        default=1e-6,
        description="Below this mode energy psi is taken from the null space of (A+B)(A-B)"
    )

    # Density matrix and concurrence checks
    roundoff_clamp: float = Field(
        default=1e-10,
        description="Negative diagonal entries above -clamp are set to zero"
    )
    positivity_tolerance: float = Field(
        default=1e-8,
        description="Positivity violation that raises a consistency error"
    )
    shortcut_tolerance: float = Field(
        default=1e-10,
        description="Allowed gap between generic and closed-form generalized concurrence"
    )

    # Exact diagonalization oracle
    pattern_tolerance: float = Field(
        default=1e-10,
        description="Off-pattern density matrix entries above this are flagged"
    )
    degeneracy_tolerance: float = Field(
        default=1e-10,
        description="Parity sector energy gap below which the ground state is flagged degenerate"
    )
    ed_max_sites: int = Field(default=14, description="Largest chain the oracle accepts")

    # Scans
    default_lambda_grid: str = Field(default="0:2.4:121", description="Default lambda grid")
    default_alpha_grid: str = Field(default="0:2:201", description="Default alpha grid")
    richardson: bool = Field(
        default=True,
        description="Refine --derivative output with a half-step auxiliary scan"
    )
    workers: int = Field(default=1, description="Default scan worker count")

    @field_validator("jacobi_max_sweeps", "ed_max_sites", "workers")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Counts must be at least one."""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator(
        "jacobi_tolerance", "zero_mode_cutoff", "pairing_cutoff", "roundoff_clamp",
        "positivity_tolerance", "shortcut_tolerance", "pattern_tolerance",
        "degeneracy_tolerance",
    )
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        """Tolerances are small positive numbers."""
        if not 0.0 < v < 1.0:
            raise ValueError("tolerance must lie in (0, 1)")
        return v

    @field_validator("ed_max_sites")
    @classmethod
    def validate_ed_cap(cls, v: int) -> int:
        """The dense oracle is only feasible for small chains."""
        if v > 16:
            raise ValueError("ed_max_sites above 16 exceeds dense memory limits")
        return v


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
