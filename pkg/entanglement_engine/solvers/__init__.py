"""SpinRadar solvers - free fermions, exact diagonalization and the two-level system."""

from entanglement_engine.solvers.numerics import EigenDecomposition, determinant, symm_eigen
from entanglement_engine.solvers.free_fermion import (
    build_bilinear,
    contractions,
    diagonalize,
    ground_energy,
    solve_chain,
)
from entanglement_engine.solvers.correlators import (
    magnetization,
    pair_correlators,
    transverse_offdiagonals,
)
from entanglement_engine.solvers.concurrence import (
    build_rdm,
    homogeneous_residual,
    total_order,
    wootters,
)
from entanglement_engine.solvers.ed_oracle import (
    ed_concurrence,
    ed_energy,
    ed_ground_state,
    ed_magnetization,
    ed_pair_correlators,
    ed_rdm,
    ed_symmetry_broken,
)
from entanglement_engine.solvers.tls_boundary import (
    dC_dalpha,
    kondo_to_tls,
    sigma_x,
    tls_concurrence,
    tls_energy,
    tls_to_kondo,
)

__all__ = [
    # Numerics
    "EigenDecomposition",
    "determinant",
    "symm_eigen",
    # Free fermions
    "build_bilinear",
    "contractions",
    "diagonalize",
    "ground_energy",
    "solve_chain",
    # Correlators and concurrence
    "magnetization",
    "pair_correlators",
    "transverse_offdiagonals",
    "build_rdm",
    "homogeneous_residual",
    "total_order",
    "wootters",
    # Exact diagonalization
    "ed_concurrence",
    "ed_energy",
    "ed_ground_state",
    "ed_magnetization",
    "ed_pair_correlators",
    "ed_rdm",
    "ed_symmetry_broken",
    # Two-level system
    "dC_dalpha",
    "kondo_to_tls",
    "sigma_x",
    "tls_concurrence",
    "tls_energy",
    "tls_to_kondo",
]
