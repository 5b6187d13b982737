"""Two-spin reduced density matrix, Wootters concurrence and total order."""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from entanglement_engine.config import get_settings
from entanglement_engine.errors import NumericalConsistencyError
from entanglement_engine.models import (
    ConcurrenceResult,
    PairCorrelators,
    TwoSpinDensityMatrix,
    WoottersBranch,
)
from entanglement_engine.solvers.correlators import transverse_offdiagonals
from entanglement_engine.solvers.numerics import symm_eigen

logger = logging.getLogger(__name__)

# sigma^y (x) sigma^y in the basis (uu, ud, du, dd); real because i * i = -1
SPIN_FLIP = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])

# Density matrix eigenvalues below this are treated as exact zeros before sqrt
EIGEN_FLOOR = 1e-14


def _clamp(value: float, name: str, clamp: float, tolerance: float) -> float:
    if value >= 0.0:
        return value
    if value >= -clamp:
        return 0.0
    if value < -tolerance:
        raise NumericalConsistencyError(
            f"density matrix entry {name} = {value:.3e} is negative", quantity=name, value=value
        )
    return 0.0


def build_rdm(pc: PairCorrelators) -> TwoSpinDensityMatrix:
    """Reduced density matrix of the pair from its correlators.

    Raises:
        NumericalConsistencyError: an entry or a 2x2 block minor is negative
            beyond the positivity tolerance.
    """
    settings = get_settings()
    clamp = settings.roundoff_clamp
    tolerance = settings.positivity_tolerance

    rho1 = (1.0 + pc.zi + pc.zj + pc.zz) / 4.0
    rho2 = (1.0 + pc.zi - pc.zj - pc.zz) / 4.0
    rho3 = (1.0 - pc.zi + pc.zj - pc.zz) / 4.0
    rho4 = (1.0 - pc.zi - pc.zj + pc.zz) / 4.0
    rho_plus, rho_minus = transverse_offdiagonals(pc)

    rho1, rho2, rho3, rho4 = (
        _clamp(value, name, clamp, tolerance)
        for value, name in ((rho1, "rho1"), (rho2, "rho2"), (rho3, "rho3"), (rho4, "rho4"))
    )

    for minor, name in (
        (rho1 * rho4 - rho_plus ** 2, "rho1*rho4-rho_plus^2"),
        (rho2 * rho3 - rho_minus ** 2, "rho2*rho3-rho_minus^2"),
    ):
        if minor < -tolerance:
            raise NumericalConsistencyError(
                f"pair ({pc.i},{pc.j}) violates positivity: {name} = {minor:.3e}",
                quantity=name,
                value=minor,
            )

    i1 = rho1 * rho4 - rho2 * rho3
    i2 = rho_plus ** 2 - rho_minus ** 2
    if i1 < 0.0 or i2 < 0.0:
        logger.debug(f"pair ({pc.i},{pc.j}): I1={i1:.3e}, I2={i2:.3e}")

    return TwoSpinDensityMatrix(
        rho1=rho1,
        rho2=rho2,
        rho3=rho3,
        rho4=rho4,
        rho_plus=rho_plus,
        rho_minus=rho_minus,
        i1=i1,
        i2=i2,
    )


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    eig = symm_eigen(rho)
    values = np.where(eig.eigenvalues < EIGEN_FLOOR, 0.0, eig.eigenvalues)
    return (eig.eigenvectors * np.sqrt(values)) @ eig.eigenvectors.T


def spin_flip_roots(rho: np.ndarray) -> Tuple[float, float, float, float]:
    """Square roots of the eigenvalues of rho * rho_tilde, descending.

    They equal the absolute eigenvalues of sqrt(rho) Y sqrt(rho) with
    Y = sigma^y (x) sigma^y, which keeps the computation symmetric.
    """
    root = _psd_sqrt(rho)
    flipped = root @ SPIN_FLIP @ root
    values = np.sort(np.abs(symm_eigen(0.5 * (flipped + flipped.T)).eigenvalues))[::-1]
    return tuple(float(x) for x in values)


def closed_form_roots(rdm: TwoSpinDensityMatrix) -> Tuple[float, float, float, float]:
    """sqrt(rho1 rho4) +- |rho+| and sqrt(rho2 rho3) +- |rho-|, in that order."""
    outer = math.sqrt(rdm.rho1 * rdm.rho4)
    inner = math.sqrt(rdm.rho2 * rdm.rho3)
    return (
        outer + abs(rdm.rho_plus),
        outer - abs(rdm.rho_plus),
        inner + abs(rdm.rho_minus),
        inner - abs(rdm.rho_minus),
    )


def shortcut_c_star(rdm: TwoSpinDensityMatrix) -> float:
    """2(|rho+| - sqrt(rho2 rho3)), valid when sqrt(rho1 rho4) + |rho+| dominates."""
    return 2.0 * (abs(rdm.rho_plus) - math.sqrt(rdm.rho2 * rdm.rho3))


def wootters(rdm: TwoSpinDensityMatrix, check_shortcut: bool = True) -> ConcurrenceResult:
    """Concurrence and generalized concurrence of a two-spin state.

    The eigenvalue route on the full 4x4 matrix is authoritative. When the
    rho_plus root is the largest the closed form is checked against it.

    Raises:
        NumericalConsistencyError: the two routes disagree.
    """
    settings = get_settings()
    lambdas = spin_flip_roots(rdm.to_matrix())
    c_star = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]

    closed = closed_form_roots(rdm)
    branch = WoottersBranch.RHO_PLUS if closed[0] >= closed[2] else WoottersBranch.RHO_MINUS

    shortcut: Optional[float] = None
    if check_shortcut and branch is WoottersBranch.RHO_PLUS:
        shortcut = shortcut_c_star(rdm)
        if abs(shortcut - c_star) > settings.shortcut_tolerance:
            raise NumericalConsistencyError(
                f"generalized concurrence mismatch: eigenvalue route {c_star:.15g}, "
                f"closed form {shortcut:.15g}",
                quantity="c_star",
                value=shortcut - c_star,
            )

    return ConcurrenceResult(
        c=max(0.0, c_star),
        c_star=c_star,
        total_order=rdm.total_order,
        lambdas=lambdas,
        branch=branch,
        shortcut=shortcut,
    )


def total_order(pc: PairCorrelators) -> float:
    """|<xx>| + |<yy>| + |<zz>|."""
    return abs(pc.xx) + abs(pc.yy) + abs(pc.zz)


def homogeneous_residual(pc: PairCorrelators, result: ConcurrenceResult) -> float:
    """(O - 1)/2 - C*; zero for nearest neighbours of a homogeneous chain."""
    return (total_order(pc) - 1.0) / 2.0 - result.c_star
