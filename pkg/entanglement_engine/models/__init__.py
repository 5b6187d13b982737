"""Domain types for SpinRadar."""

from entanglement_engine.models.chain import (
    ChainSpec,
    ContractionMatrix,
    DenseState,
    FermionModes,
    Parity,
)
from entanglement_engine.models.density import (
    ConcurrenceResult,
    PairCorrelators,
    TwoSpinDensityMatrix,
    WoottersBranch,
)
from entanglement_engine.models.tls import AlphaDerivative, TLSBranch, TLSModel, TLSResult
from entanglement_engine.models.scan import (
    CHAIN_OBSERVABLES,
    TLS_OBSERVABLES,
    ModelKind,
    Observable,
    PointError,
    ScanMetadata,
    ScanSeries,
    ScanSpec,
    column_key,
)

__all__ = [
    # Chain models
    "ChainSpec",
    "ContractionMatrix",
    "DenseState",
    "FermionModes",
    "Parity",
    # Density matrix models
    "ConcurrenceResult",
    "PairCorrelators",
    "TwoSpinDensityMatrix",
    "WoottersBranch",
    # Two-level system models
    "AlphaDerivative",
    "TLSBranch",
    "TLSModel",
    "TLSResult",
    # Scan models
    "CHAIN_OBSERVABLES",
    "TLS_OBSERVABLES",
    "ModelKind",
    "Observable",
    "PointError",
    "ScanMetadata",
    "ScanSeries",
    "ScanSpec",
    "column_key",
]
