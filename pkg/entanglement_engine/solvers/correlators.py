"""Spin correlators from the contraction matrix via Wick's theorem.

With A_i = c_i^dagger + c_i and B_i = c_i^dagger - c_i, sigma_i^z = A_i B_i and
the x and y string products reduce to determinants of <B_p A_q> blocks.
"""

from typing import Tuple

from entanglement_engine.errors import InputError
from entanglement_engine.models import ContractionMatrix, PairCorrelators
from entanglement_engine.solvers.numerics import determinant


def _check_site(m: ContractionMatrix, i: int) -> None:
    if not 1 <= i <= m.n_sites:
        raise InputError(f"site {i} outside 1..{m.n_sites}")


def magnetization(m: ContractionMatrix, i: int) -> float:
    """<sigma_i^z> = <A_i B_i> = -<B_i A_i>."""
    _check_site(m, i)
    return -m.b_a(i, i)


def pair_correlators(m: ContractionMatrix, i: int, j: int) -> PairCorrelators:
    """xx, yy, zz and both magnetizations for sites i < j (1-based)."""
    _check_site(m, i)
    _check_site(m, j)
    if i >= j:
        raise InputError(f"pair ({i},{j}) must satisfy i < j")

    g = m.values
    lo, hi = i - 1, j - 1  # 0-based

    # <B_{i+r} A_{i+s+1}>, r, s = 0..j-i-1
    xx = determinant(g[lo:hi, lo + 1:hi + 1])
    # <B_{i+r+1} A_{i+s}>
    yy = determinant(g[lo + 1:hi + 1, lo:hi])
    zz = g[lo, lo] * g[hi, hi] - g[hi, lo] * g[lo, hi]

    return PairCorrelators(
        i=i,
        j=j,
        xx=xx,
        yy=yy,
        zz=float(zz),
        zi=-float(g[lo, lo]),
        zj=-float(g[hi, hi]),
    )


def transverse_offdiagonals(pc: PairCorrelators) -> Tuple[float, float]:
    """(rho_plus, rho_minus) = ((xx - yy)/4, (xx + yy)/4)."""
    return (pc.xx - pc.yy) / 4.0, (pc.xx + pc.yy) / 4.0
