"""Free-fermion solution of the transverse-field Ising chain.

After the Jordan-Wigner transformation (sigma^z = 1 - 2 c^dagger c) the chain
becomes

    H = sum_ij A_ij c_i^dagger c_j + 1/2 sum_ij B_ij (c_i^dagger c_j^dagger + c_j c_i) + const

with A symmetric and B antisymmetric. The boundary bond between sites 1 and N
carries the fermion parity string; it is bilinearized by setting the parity to
+1, which is exact for the open chain (kappa = 0) and turns kappa = lambda into
the translation-invariant antiperiodic ring.

Modes follow from (A - B)(A + B) phi_n = omega_n^2 phi_n and
psi_n = (A + B) phi_n / omega_n, with g = (phi + psi)/2 and h = (phi - psi)/2.
"""

import logging
from typing import Tuple

import numpy as np

from entanglement_engine.config import get_settings
from entanglement_engine.errors import InputError
from entanglement_engine.models import ChainSpec, ContractionMatrix, FermionModes
from entanglement_engine.solvers.numerics import symm_eigen

logger = logging.getLogger(__name__)


def build_bilinear(spec: ChainSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Coupling matrices (A, B) of the bilinear fermion Hamiltonian."""
    n = spec.n_sites
    a = 2.0 * np.eye(n)
    b = np.zeros((n, n))

    for i in range(n - 1):
        a[i, i + 1] -= spec.lam
        a[i + 1, i] -= spec.lam
        b[i, i + 1] -= spec.lam
        b[i + 1, i] += spec.lam

    if spec.kappa != 0.0:
        # -kappa sigma_1^x sigma_N^x with the parity string set to +1
        a[n - 1, 0] += spec.kappa
        a[0, n - 1] += spec.kappa
        b[n - 1, 0] += spec.kappa
        b[0, n - 1] -= spec.kappa

    return a, b


def _validate_pair(a, b) -> Tuple[np.ndarray, np.ndarray]:
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise InputError(f"A and B must be square and equal in shape, got {a.shape}, {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InputError("A and B must be finite")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12):
        raise InputError("A must be symmetric")
    if not np.allclose(b, -b.T, rtol=0.0, atol=1e-12):
        raise InputError("B must be antisymmetric")
    return a, b


def _symmetrized(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def _null_partners(
    a_plus_b: np.ndarray,
    a_minus_b: np.ndarray,
    phi_small: np.ndarray,
) -> np.ndarray:
    """psi rows for near-zero modes from the low eigenvectors of (A+B)(A-B).

    The psi basis is rotated onto the directions of (A+B) phi by an
    orthogonal Procrustes step; for a single mode this just fixes the sign.
    """
    k = phi_small.shape[0]
    partner = symm_eigen(_symmetrized(a_plus_b @ a_minus_b))
    w = partner.eigenvectors[:, :k]
    overlap = w.T @ (a_plus_b @ phi_small.T)
    u, _, vt = np.linalg.svd(overlap)
    return (w @ (u @ vt)).T


def diagonalize(a, b) -> FermionModes:
    """Bogoliubov modes of the bilinear Hamiltonian (A, B), omega ascending.

    Raises:
        InputError: malformed matrices.
        ConvergenceError: propagated from the eigensolver.
    """
    settings = get_settings()
    a, b = _validate_pair(a, b)
    a_plus_b = a + b
    a_minus_b = a - b

    eig = symm_eigen(_symmetrized(a_minus_b @ a_plus_b))
    phi = eig.eigenvectors.T  # rows are modes

    image = (a_plus_b @ phi.T).T
    norms = np.linalg.norm(image, axis=1)
    omega = norms.copy()
    psi = np.zeros_like(phi)

    regular = norms >= settings.pairing_cutoff
    psi[regular] = image[regular] / norms[regular, None]
    if not np.all(regular):
        small = np.flatnonzero(~regular)
        psi[small] = _null_partners(a_plus_b, a_minus_b, phi[small])
        logger.debug(f"{small.size} near-zero modes paired through the null space")

    zero = omega < settings.zero_mode_cutoff
    omega[zero] = 0.0
    zero_modes = int(np.count_nonzero(zero))
    if zero_modes:
        logger.debug(f"{zero_modes} zero modes clamped (cutoff {settings.zero_mode_cutoff:g})")

    order = np.argsort(omega, kind="stable")
    phi, psi, omega = phi[order], psi[order], omega[order]

    return FermionModes(
        omega=omega,
        g=0.5 * (phi + psi),
        h=0.5 * (phi - psi),
        zero_modes=zero_modes,
    )


def ground_energy(a, modes: FermionModes) -> float:
    """E0 = -N + Tr(A)/2 - sum(omega)/2 for the spin chain built by build_bilinear."""
    a = np.asarray(a, dtype=float)
    return float(-a.shape[0] + 0.5 * np.trace(a) - 0.5 * np.sum(modes.omega))


def contractions(modes: FermionModes) -> ContractionMatrix:
    """Vacuum contractions <B_p A_q> = -(psi^T phi)_pq."""
    phi = modes.g + modes.h
    psi = modes.g - modes.h
    return ContractionMatrix(values=-(psi.T @ phi))


def solve_chain(spec: ChainSpec) -> Tuple[FermionModes, ContractionMatrix, float]:
    """Modes, contraction matrix and ground energy of a chain."""
    a, b = build_bilinear(spec)
    modes = diagonalize(a, b)
    return modes, contractions(modes), ground_energy(a, modes)
