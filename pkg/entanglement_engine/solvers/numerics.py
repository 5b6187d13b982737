"""Dense real symmetric eigensolver and determinant.

The eigensolver is a cyclic Jacobi method with a fixed parallel (round-robin)
rotation order. Each round rotates a set of disjoint index pairs at once, so a
round is a handful of vectorized numpy updates. Output is deterministic: same
input, same sweep order, same eigenvector signs.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from entanglement_engine.config import get_settings
from entanglement_engine.errors import ConvergenceError, InputError

logger = logging.getLogger(__name__)

# Components smaller than this are skipped when fixing eigenvector signs
SIGN_THRESHOLD = 1e-12
STAGNATION_LIMIT = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def residual(self, m: np.ndarray) -> float:
        """max_k ||M v_k - lambda_k v_k||_inf."""
        m = np.asarray(m, dtype=float)
        diff = m @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.abs(diff)))

    def orthonormality_defect(self) -> float:
        """||V^T V - 1||_inf."""
        gram = self.eigenvectors.T @ self.eigenvectors
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T


def as_symmetric(m, tolerance: float = 1e-12) -> np.ndarray:
    """Validate a real symmetric matrix and return it as a float array.

    Asymmetry up to ``tolerance`` times the largest entry is accepted and
    averaged away; anything larger is an input error.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asymmetry = float(np.max(np.abs(a - a.T)))
    if asymmetry > tolerance * max(scale, 1.0):
        raise InputError(f"matrix is not symmetric (max asymmetry {asymmetry:.3e})")
    return 0.5 * (a + a.T)


def _round_robin(n: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Index pairs for each round of one parallel Jacobi sweep.

    Every unordered pair appears exactly once per sweep and the pairs within
    a round are disjoint. Odd sizes get a dummy index that is dropped.
    """
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        p_idx, q_idx = [], []
        for k in range(size // 2):
            a, b = players[k], players[size - 1 - k]
            if a >= n or b >= n:
                continue
            p_idx.append(min(a, b))
            q_idx.append(max(a, b))
        rounds.append((np.array(p_idx, dtype=int), np.array(q_idx, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    """Annihilate a[p, q] for all pairs of one round, in place."""
    apq = a[p, q]
    app = a[p, p]
    aqq = a[q, q]
    active = apq != 0.0
    if not np.any(active):
        return

    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        theta = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
        t = np.where(
            active,
            np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0)),
            0.0,
        )
    t = np.nan_to_num(t, nan=0.0, posinf=0.0, neginf=0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    # Rows p, q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c[:, None] * row_p - s[:, None] * row_q
    a[q, :] = s[:, None] * row_p + c[:, None] * row_q

    # Columns p, q
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * c - col_q * s
    a[:, q] = col_p * s + col_q * c

    a[p, p] = app - t * apq
    a[q, q] = aqq + t * apq
    a[p, q] = 0.0
    a[q, p] = 0.0

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = vec_p * c - vec_q * s
    v[:, q] = vec_p * s + vec_q * c


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make the first significant component of every column positive."""
    significant = np.abs(vectors) > SIGN_THRESHOLD
    first = np.argmax(significant, axis=0)
    leading = vectors[first, np.arange(vectors.shape[1])]
    signs = np.where(leading < 0.0, -1.0, 1.0)
    return vectors * signs


def symm_eigen(
    m,
    max_sweeps: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> EigenDecomposition:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Args:
        m: Square, symmetric, finite matrix.
        max_sweeps: Sweep cap; defaults to the configured value.
        tolerance: Stop once off(M) <= tolerance * ||M||_F.

    Returns:
        EigenDecomposition with ascending eigenvalues.

    Raises:
        InputError: non-square, asymmetric or non-finite input.
        ConvergenceError: the sweep cap was reached.
    """
    settings = get_settings()
    max_sweeps = max_sweeps or settings.jacobi_max_sweeps
    tolerance = tolerance or settings.jacobi_tolerance

    a = as_symmetric(m)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    threshold = tolerance * scale

    sweeps = 0
    if n > 1 and scale > 0.0:
        rounds = _round_robin(n)
        off = _off_norm(a)
        while off > threshold:
            if sweeps >= max_sweeps:
                raise ConvergenceError(
                    f"Jacobi eigensolver did not converge for dim {n}", off / scale, sweeps
                )
            for p, q in rounds:
                _rotate(a, v, p, q)
            sweeps += 1
            previous, off = off, _off_norm(a)
            # Roundoff floor: no progress, but already far below the residual target
            if off >= previous and off <= STAGNATION_LIMIT * scale:
                break
        logger.debug(f"Jacobi converged in {sweeps} sweeps (dim={n}, off={off:.2e})")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(
        eigenvalues=eigenvalues[order],
        eigenvectors=_fix_signs(v[:, order]),
        sweeps=sweeps,
    )


def determinant(m) -> float:
    """Determinant by Gaussian elimination with partial pivoting.

    Raises:
        InputError: non-square or non-finite input.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"determinant needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")

    n = a.shape[0]
    sign = 1.0
    for k in range(n):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if a[pivot, k] == 0.0:
            return 0.0
        if pivot != k:
            a[[k, pivot]] = a[[pivot, k]]
            sign = -sign
        if k + 1 < n:
            factors = a[k + 1:, k] / a[k, k]
            a[k + 1:, k:] -= np.outer(factors, a[k, k:])
    return float(sign * np.prod(np.diag(a)))
