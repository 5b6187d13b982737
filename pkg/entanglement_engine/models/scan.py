"""Scan definitions and their results."""

import enum
import hashlib
import json
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ModelKind(enum.Enum):
    """Which model a scan sweeps."""
    CHAIN = "chain"
    TLS = "tls"


class Observable(enum.Enum):
    """Quantities a scan can record."""
    # Chain pairs
    C = "c"
    C_STAR = "c_star"
    TOTAL_ORDER = "total_order"
    XX = "xx"
    YY = "yy"
    ZZ = "zz"
    ZI = "zi"
    ZJ = "zj"
    I1 = "i1"
    I2 = "i2"
    # Two-level system
    ENERGY = "energy"
    SIGMA_X = "sigma_x"
    CONCURRENCE = "concurrence"

    @classmethod
    def expand(cls, name: str) -> List["Observable"]:
        """Resolve a user-facing name; ``correlators`` stands for the five correlators."""
        if name == "correlators":
            return [cls.XX, cls.YY, cls.ZZ, cls.ZI, cls.ZJ]
        return [cls(name)]


CHAIN_OBSERVABLES = frozenset({
    Observable.C, Observable.C_STAR, Observable.TOTAL_ORDER, Observable.XX, Observable.YY,
    Observable.ZZ, Observable.ZI, Observable.ZJ, Observable.I1, Observable.I2,
})
TLS_OBSERVABLES = frozenset({Observable.ENERGY, Observable.SIGMA_X, Observable.CONCURRENCE})


def column_key(observable: Observable, pair: Optional[Tuple[int, int]] = None) -> str:
    """CSV/JSON column name, e.g. ``c@1-2`` or ``sigma_x``."""
    if pair is None:
        return observable.value
    return f"{observable.value}@{pair[0]}-{pair[1]}"


class ScanSpec(BaseModel):
    """A one-parameter sweep: lambda for chains, alpha for the two-level system."""

    model_config = ConfigDict(frozen=True)

    model: ModelKind
    grid: List[float] = Field(..., min_length=1)
    outputs: List[Observable] = Field(default_factory=lambda: [Observable.C])
    derivative: bool = False
    label: Optional[str] = None

    # Chain
    n_sites: Optional[int] = Field(default=None, ge=2)
    kappa: float = Field(default=0.0, allow_inf_nan=False)
    kappa_relative: bool = Field(default=False, description="kappa is a multiple of lambda")
    pairs: List[Tuple[int, int]] = Field(default_factory=list)

    # Two-level system
    delta: Optional[float] = Field(default=None, ge=0.0)
    omega_c: float = Field(default=1.0, gt=0.0)
    c0: float = Field(default=1.0, gt=0.0)
    c1: float = Field(default=1.0, gt=0.0)
    c2: float = Field(default=1.0, gt=0.0)
    kt_window: float = Field(default=0.05, gt=0.0, lt=0.5)
    kt_overlay: bool = False

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        """Grid points must be finite and strictly increasing."""
        if not all(math.isfinite(x) for x in v):
            raise ValueError("grid points must be finite")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("grid must be strictly increasing")
        return v

    @model_validator(mode="after")
    def check_model_fields(self) -> "ScanSpec":
        if self.model is ModelKind.CHAIN:
            if self.n_sites is None:
                raise ValueError("chain scans need n_sites")
            for i, j in self.pairs:
                if not 1 <= i < j <= self.n_sites:
                    raise ValueError(f"pair ({i},{j}) invalid for N={self.n_sites}")
            if self.grid[0] < 0:
                raise ValueError("lambda grid must be non-negative")
            allowed = CHAIN_OBSERVABLES
        else:
            if self.delta is None:
                raise ValueError("tls scans need delta")
            if self.delta / self.omega_c >= 1.0:
                raise ValueError("delta/omega_c must be below 1")
            if self.grid[0] < 0:
                raise ValueError("alpha grid must be non-negative")
            allowed = TLS_OBSERVABLES
        bad = [o.value for o in self.outputs if o not in allowed]
        if bad:
            raise ValueError(f"observables {bad} do not apply to {self.model.value} scans")
        return self

    def kappa_at(self, lam: float) -> float:
        """Boundary bond at a given lambda."""
        return self.kappa * lam if self.kappa_relative else self.kappa

    @property
    def kappa_rule(self) -> str:
        if self.kappa_relative:
            return f"{self.kappa!r}xLAMBDA"
        return repr(self.kappa)

    def column_keys(self) -> List[str]:
        """Observable columns in emission order (pair-major for chains)."""
        if self.model is ModelKind.TLS:
            return [column_key(o) for o in self.outputs]
        return [column_key(o, pair) for pair in self.pairs for o in self.outputs]


class PointError(BaseModel):
    """A grid point whose evaluation failed."""

    index: int
    parameter: float
    kind: str
    message: str


class ScanMetadata(BaseModel):
    code_version: str
    created_at: str
    n_sites: Optional[int] = None
    kappa_rule: Optional[str] = None
    rng: str = "none"
    branches: Dict[str, List[Optional[str]]] = Field(default_factory=dict)
    zero_modes: List[int] = Field(default_factory=list)
    degenerate: List[bool] = Field(default_factory=list)
    negative_invariants: Dict[str, int] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)
    errors: List[PointError] = Field(default_factory=list)


class ScanSeries(BaseModel):
    """Observable columns over a scan grid."""

    spec: ScanSpec
    parameter: List[float]
    columns: Dict[str, List[Optional[float]]]
    metadata: ScanMetadata

    @model_validator(mode="after")
    def check_lengths(self) -> "ScanSeries":
        n_points = len(self.parameter)
        for key, values in self.columns.items():
            if len(values) != n_points:
                raise ValueError(f"column {key} has {len(values)} values for {n_points} points")
        return self

    def column(self, key: str) -> np.ndarray:
        """Column as a float array with NaN for failed points."""
        if key not in self.columns:
            raise KeyError(f"no column {key!r}; available: {sorted(self.columns)}")
        return np.array([np.nan if v is None else v for v in self.columns[key]], dtype=float)

    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON payload without the creation timestamp."""
        payload = self.model_dump(mode="json")
        payload["metadata"].pop("created_at", None)
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
