"""Two-spin correlators, reduced density matrices and concurrence results."""

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


class WoottersBranch(enum.Enum):
    """Which closed-form value is the largest square root of the R eigenvalues."""
    RHO_PLUS = "rho_plus"    # sqrt(rho1 rho4) + |rho+|
    RHO_MINUS = "rho_minus"  # sqrt(rho2 rho3) + |rho-|


@dataclass(frozen=True)
class PairCorrelators:
    """Spin expectation values for the pair (i, j), 1-based with i < j."""

    i: int
    j: int
    xx: float
    yy: float
    zz: float
    zi: float
    zj: float

    def max_magnitude(self) -> float:
        return max(abs(self.xx), abs(self.yy), abs(self.zz), abs(self.zi), abs(self.zj))


@dataclass(frozen=True)
class TwoSpinDensityMatrix:
    """Reduced state of two spins in the basis (up-up, up-down, down-up, down-down).

    Only the diagonal and the two anti-diagonal entries are non-zero for the
    chains considered here. ``matrix`` keeps the full 4x4 when it was
    obtained by an exact partial trace.
    """

    rho1: float
    rho2: float
    rho3: float
    rho4: float
    rho_plus: float
    rho_minus: float
    i1: float
    i2: float
    matrix: Optional[np.ndarray] = None
    pattern_deviation: float = 0.0

    @property
    def trace(self) -> float:
        return self.rho1 + self.rho2 + self.rho3 + self.rho4

    @property
    def total_order(self) -> float:
        """|<xx>| + |<yy>| + |<zz>| recovered from the matrix entries."""
        xx = 2.0 * (self.rho_plus + self.rho_minus)
        yy = 2.0 * (self.rho_minus - self.rho_plus)
        zz = self.rho1 - self.rho2 - self.rho3 + self.rho4
        return abs(xx) + abs(yy) + abs(zz)

    def to_matrix(self) -> np.ndarray:
        """Full 4x4 array; the X-shaped reconstruction when no exact matrix is stored."""
        if self.matrix is not None:
            return np.array(self.matrix, dtype=float)
        rho = np.diag([self.rho1, self.rho2, self.rho3, self.rho4])
        rho[0, 3] = rho[3, 0] = self.rho_plus
        rho[1, 2] = rho[2, 1] = self.rho_minus
        return rho


@dataclass(frozen=True)
class ConcurrenceResult:
    """Wootters concurrence, its unclamped form and the total order of a pair."""

    c: float
    c_star: float
    total_order: float
    lambdas: Tuple[float, float, float, float]
    branch: WoottersBranch
    shortcut: Optional[float] = None
