"""Exact diagonalization of the spin chain, used as ground truth.

The Hamiltonian -lambda sum sigma^x_i sigma^x_{i+1} - sum sigma^z_i
- kappa sigma^x_1 sigma^x_N is assembled as a sparse matrix in the sigma^z
basis and split by the spin-flip parity (product of all sigma^z), which it
conserves. Each sector is diagonalized densely with scipy.

Basis index bit k is 1 when site k + 1 points down.
"""

import logging
from typing import Dict, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse

from entanglement_engine.config import get_settings
from entanglement_engine.errors import InputError
from entanglement_engine.models import (
    ChainSpec,
    ConcurrenceResult,
    DenseState,
    PairCorrelators,
    Parity,
    TwoSpinDensityMatrix,
)
from entanglement_engine.solvers.concurrence import wootters

logger = logging.getLogger(__name__)

# Entries outside the X pattern of the two-spin matrix (uu, ud, du, dd)
_X_PATTERN = np.array([
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 1, 0],
    [1, 0, 0, 1],
], dtype=bool)


def _spin_signs(n_sites: int) -> np.ndarray:
    """sigma^z eigenvalue of every site for every basis state, shape (2^N, N)."""
    states = np.arange(2 ** n_sites)
    bits = (states[:, None] >> np.arange(n_sites)) & 1
    return 1.0 - 2.0 * bits


def build_hamiltonian(spec: ChainSpec) -> scipy.sparse.csr_matrix:
    """Sparse Hamiltonian of the chain including the exact boundary bond."""
    n = spec.n_sites
    dim = 2 ** n
    states = np.arange(dim)

    rows = [states]
    cols = [states]
    data = [-_spin_signs(n).sum(axis=1)]

    bonds = [(k, k + 1, spec.lam) for k in range(n - 1)]
    if spec.kappa != 0.0:
        bonds.append((0, n - 1, spec.kappa))

    for k, l, coupling in bonds:
        if coupling == 0.0:
            continue
        flipped = states ^ ((1 << k) | (1 << l))
        rows.append(flipped)
        cols.append(states)
        data.append(np.full(dim, -coupling))

    h = scipy.sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    return h.tocsr()


def _sector_indices(n_sites: int) -> Dict[Parity, np.ndarray]:
    states = np.arange(2 ** n_sites)
    down = np.count_nonzero(_spin_signs(n_sites) < 0.0, axis=1)
    return {
        Parity.EVEN: states[down % 2 == 0],
        Parity.ODD: states[down % 2 == 1],
    }


def _lowest(h_sector: np.ndarray, vectors: bool = True) -> Tuple[float, np.ndarray]:
    if vectors:
        values, vecs = scipy.linalg.eigh(h_sector, subset_by_index=[0, 0])
        return float(values[0]), vecs[:, 0]
    values = scipy.linalg.eigh(h_sector, eigvals_only=True, subset_by_index=[0, 0])
    return float(values[0]), np.empty(0)


def ed_ground_state(spec: ChainSpec, parity: Parity = Parity.EVEN) -> DenseState:
    """Lowest eigenstate of one parity sector, with the other sector's energy.

    The even sector is the default because the free-fermion vacuum lives there.

    Raises:
        InputError: the chain exceeds the configured size cap.
    """
    settings = get_settings()
    if spec.n_sites > settings.ed_max_sites:
        raise InputError(
            f"exact diagonalization is capped at N={settings.ed_max_sites}, got {spec.n_sites}"
        )

    h = build_hamiltonian(spec)
    sectors = _sector_indices(spec.n_sites)

    own = sectors[parity]
    other = sectors[Parity.ODD if parity is Parity.EVEN else Parity.EVEN]
    h_own = h[own][:, own].toarray()
    energy, vector = _lowest(h_own)
    partner_energy, _ = _lowest(h[other][:, other].toarray(), vectors=False)

    # Real ground state with its largest-magnitude amplitude positive
    pivot = int(np.argmax(np.abs(vector)))
    if vector[pivot] < 0.0:
        vector = -vector

    amplitudes = np.zeros(2 ** spec.n_sites)
    amplitudes[own] = vector
    residual = float(np.max(np.abs(h_own @ vector - energy * vector)))

    degenerate = abs(partner_energy - energy) < settings.degeneracy_tolerance
    if degenerate:
        logger.warning(
            f"N={spec.n_sites}, lambda={spec.lam}: parity sectors degenerate "
            f"(gap {partner_energy - energy:.2e}); returning the {parity.name.lower()} state"
        )

    return DenseState(
        n_sites=spec.n_sites,
        amplitudes=amplitudes,
        energy=energy,
        parity=parity,
        partner_energy=partner_energy,
        degenerate=degenerate,
        residual=residual,
    )


def ed_symmetry_broken(even: DenseState, odd: DenseState) -> Tuple[DenseState, DenseState]:
    """(even + odd)/sqrt(2) and (even - odd)/sqrt(2), the two symmetry-broken states."""
    if even.n_sites != odd.n_sites or even.parity is odd.parity:
        raise InputError("need one even and one odd state of the same chain")
    mean_energy = 0.5 * (even.energy + odd.energy)
    states = []
    for sign in (1.0, -1.0):
        states.append(DenseState(
            n_sites=even.n_sites,
            amplitudes=(even.amplitudes + sign * odd.amplitudes) / np.sqrt(2.0),
            energy=mean_energy,
            parity=None,
            partner_energy=None,
            degenerate=even.degenerate,
        ))
    return states[0], states[1]


def _check_pair(state: DenseState, i: int, j: int) -> None:
    if not 1 <= i < j <= state.n_sites:
        raise InputError(f"pair ({i},{j}) invalid for N={state.n_sites}")


def ed_energy(spec: ChainSpec, state: DenseState) -> float:
    """<psi|H|psi> for an arbitrary state of the chain."""
    psi = state.amplitudes
    return float(psi @ (build_hamiltonian(spec) @ psi))


def ed_magnetization(state: DenseState, i: int) -> float:
    if not 1 <= i <= state.n_sites:
        raise InputError(f"site {i} outside 1..{state.n_sites}")
    signs = _spin_signs(state.n_sites)[:, i - 1]
    return float(np.sum(signs * state.amplitudes ** 2))


def ed_pair_correlators(state: DenseState, i: int, j: int) -> PairCorrelators:
    """Correlators of the pair read directly from the amplitudes."""
    _check_pair(state, i, j)
    psi = state.amplitudes
    signs = _spin_signs(state.n_sites)
    zi, zj = signs[:, i - 1], signs[:, j - 1]
    states = np.arange(psi.size)
    partner = psi[states ^ ((1 << (i - 1)) | (1 << (j - 1)))]

    # sigma^y|s> = i s |flipped>, so sigma^y_i sigma^y_j picks up -s_i s_j
    return PairCorrelators(
        i=i,
        j=j,
        xx=float(np.sum(psi * partner)),
        yy=float(np.sum(-zi * zj * psi * partner)),
        zz=float(np.sum(zi * zj * psi ** 2)),
        zi=float(np.sum(zi * psi ** 2)),
        zj=float(np.sum(zj * psi ** 2)),
    )


def ed_rdm(state: DenseState, i: int, j: int) -> TwoSpinDensityMatrix:
    """Exact partial trace over all sites but i and j."""
    _check_pair(state, i, j)
    settings = get_settings()
    n = state.n_sites

    # Axis k of the tensor is site k + 1 (bit k of the basis index)
    tensor = state.amplitudes.reshape([2] * n).transpose(list(range(n))[::-1])
    block = np.moveaxis(tensor, [i - 1, j - 1], [0, 1]).reshape(4, -1)
    rho = block @ block.T

    deviation = float(np.max(np.abs(rho[~_X_PATTERN])))
    if deviation > settings.pattern_tolerance:
        logger.warning(f"pair ({i},{j}): density matrix leaves the X pattern by {deviation:.2e}")

    rho1, rho2, rho3, rho4 = (float(x) for x in np.diag(rho))
    rho_plus = float(rho[0, 3])
    rho_minus = float(rho[1, 2])
    return TwoSpinDensityMatrix(
        rho1=rho1,
        rho2=rho2,
        rho3=rho3,
        rho4=rho4,
        rho_plus=rho_plus,
        rho_minus=rho_minus,
        i1=rho1 * rho4 - rho2 * rho3,
        i2=rho_plus ** 2 - rho_minus ** 2,
        matrix=rho,
        pattern_deviation=deviation,
    )


def ed_concurrence(state: DenseState, i: int, j: int) -> ConcurrenceResult:
    """Wootters concurrence of the exact pair state, eigenvalue route only."""
    return wootters(ed_rdm(state, i, j), check_shortcut=False)
